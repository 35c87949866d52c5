import logging
import logging.config
import subprocess
import sys
from pathlib import Path

from invoke import task

CORPUS_PATH = Path('corpus').resolve()
# Programs exercised by rpp_trials; each is compiled and compared against the RPP oracle
RPP_PROGRAMS = ['S', 'P', 'Sign', 'Swap', 'S ; Sign', 'S || P', 'It[S]', 'If[S,Id,P]', 'Perm[2,3,1]', 'Weaken[S,1]']
# (file, definition, golden) triples regenerated by the golden task
GOLDENS = [('swap.iso', 'swap_mixed', 'swap.json'), ('iso1.iso', 'iso1', 'iso1.json')]
# Files that check_corpus expects to be rejected
REJECTED = {'cantor.iso', 'loop.iso', 'od_remark.iso'}

# Add the src directory to the path so we can import the config module
sys.path.append(str(Path(__file__).resolve().parent / 'src'))
from config import LOG_CONFIG
# Configure logging
logging.config.dictConfig(LOG_CONFIG)
logger = logging.getLogger(__name__)


def revisos(*args: str) -> int:
    command = [sys.executable, 'main.py', *args]
    logger.debug('Running %s', command)
    return subprocess.run(command).returncode


@task
def test(ctx):
    '''Run the test suite.'''
    logger.info('Running tests...')
    result = subprocess.run('pytest src', shell=True)
    # shell=True lets us use the environment variables, including the Python venv
    if result.returncode != 0:
        logger.error('Tests failed.')
        logger.error('Error code: %d', result.returncode)
        sys.exit(1)

    logger.info('Complete.')

@task
def check_corpus(ctx):
    '''Type-check every corpus file through the command line.'''
    logger.info('Checking corpus files...')
    for path in sorted(CORPUS_PATH.glob('*.iso')):
        code = revisos('check', str(path))
        expected = 1 if path.name in REJECTED else 0
        if code != expected:
            logger.error('Unexpected result for %s', path.name)
            logger.error('Error code: %d, expected %d', code, expected)
            sys.exit(1)

    logger.info('Complete.')

@task
def rpp_trials(ctx, trials=100, seed=None):
    '''Compare compiled RPP programs against the RPP interpreter on random inputs.'''
    logger.info('Running RPP trials...')
    for program in RPP_PROGRAMS:
        args = ['rpp', 'test', program, '--trials', str(trials)]
        if seed is not None:
            args += ['--seed', str(seed)]
        code = revisos(*args)
        if code != 0:
            logger.error('Trials failed for %s', program)
            logger.error('Error code: %d', code)
            sys.exit(1)

    logger.info('Complete.')

@task
def golden(ctx):
    '''Regenerate the proof goldens.'''
    logger.info('Regenerating proof goldens...')
    for filename, name, target in GOLDENS:
        code = revisos('proof', 'extract', str(CORPUS_PATH / filename), '--name', name,
                       '-o', str(CORPUS_PATH / 'golden' / target))
        if code != 0:
            logger.error('Failed to extract %s from %s', name, filename)
            logger.error('Error code: %d', code)
            sys.exit(1)

    logger.info('Complete.')

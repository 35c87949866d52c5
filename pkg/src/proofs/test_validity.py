# Tests for validity.py

import pytest

from config import CORPUS_DIR
from core import Mu, ProofError
from parser import parse_file
from proofs import Invalid, Valid, build_prethread, check_validity, extract_proof
from rpp import It, S, compile_rpp
from typecheck import RecInfo, check_structural_recursion


def corpus_iso(filename, name):
    return parse_file(CORPUS_DIR / filename).get(name).iso


def iteration_aux():
    return compile_rpp(It(S())).clauses[1].rhs.iso


def test_map_swap_thread():
    iso = corpus_iso('map_swap.iso', 'map_swap')
    d = extract_proof(iso)
    threads = build_prethread(d, 1)
    assert len(threads) == 1
    assert threads[0].word() == 'i r r W W W A C'
    p, climb, q = threads[0].parts()
    assert p == ['i', 'r', 'r']
    assert climb == ['W', 'W', 'W']
    assert q == []


def test_map_swap_valid():
    iso = corpus_iso('map_swap.iso', 'map_swap')
    result = check_validity(extract_proof(iso), check_structural_recursion(iso))
    assert isinstance(result, Valid)
    (witness,) = result.loops
    assert witness.label == 'f'
    assert witness.index == 1
    assert witness.recurring.type == iso.annotation.lhs
    assert isinstance(witness.recurring.type, Mu)
    assert witness.recurring.dual
    assert witness.to_dict()['threads'][0]['weights'] == 'i r r W W W A C'


def test_iteration_aux_valid_on_counter():
    aux = iteration_aux()
    d = extract_proof(aux)
    result = check_validity(d)
    assert isinstance(result, Valid)
    assert [w.index for w in result.loops] == [2]
    assert build_prethread(d, RecInfo(2, 2, []))[0].word() == 'r i r W W W W A ~r C'
    assert isinstance(check_validity(d, RecInfo(2, 2, [])), Valid)


def test_iteration_aux_first_component():
    d = extract_proof(iteration_aux())
    with pytest.raises(ProofError, match='not part of the input'):
        build_prethread(d, 1)
    result = check_validity(d, RecInfo(1, 2, []))
    assert isinstance(result, Invalid)
    assert 'not part of the input' in result.reason


def test_loop_invalid():
    d = extract_proof(corpus_iso('loop.iso', 'loop'), check_recursion=False)
    assert build_prethread(d, 1)[0].word() == 'W W A C'
    result = check_validity(d)
    assert isinstance(result, Invalid)
    assert 'no strict decrease' in result.reason
    assert result.to_dict() == {'valid': False, 'reason': result.reason}


def test_cantor_invalid():
    d = extract_proof(corpus_iso('cantor.iso', 'cantor'), check_recursion=False)
    assert isinstance(check_validity(d), Invalid)


def test_finite_proof_valid():
    result = check_validity(extract_proof(corpus_iso('iso1.iso', 'iso1')))
    assert result == Valid()
    assert result.to_dict() == {'valid': True, 'loops': []}


def test_prethread_needs_a_labeled_root():
    with pytest.raises(ProofError):
        build_prethread(extract_proof(corpus_iso('iso1.iso', 'iso1')), 1)
    with pytest.raises(ProofError, match='outside'):
        build_prethread(extract_proof(corpus_iso('map_swap.iso', 'map_swap')), 2)

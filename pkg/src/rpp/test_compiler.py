# Tests for compiler.py: typing and simulation of the compiled isos

import random

from config import RPP_INPUT_RANGE
from core import App, Clauses, Fix, IsoType, Let, closed_values, iso_annotation, value_to_term
from evaluation import EvalConfig, apply_iso, evaluate, round_trip
from invert import invert
from parser import parse, pretty
from typecheck import CLOSED, EMPTY_ISO_CTX, RecInfo, check_structural_recursion, type_iso
from rpp import (Id, If, It, P, Par, S, Seq, Sign, Swap, compile_rpp, compile_source, decode_tuple, encode_int,
                 encode_tuple, random_rpp, rpp_eval, rpp_invert, show_rpp, z_power)

CONFIG = EvalConfig(fuel=1_000_000)
# Largest number of closed values tried per type in exhaustive sweeps
SWEEP_CAP = 200


def random_inputs(rng, k):
    return [rng.randint(*RPP_INPUT_RANGE) for _ in range(k)]


def run_compiled(iso, xs, config=CONFIG):
    result = apply_iso(iso, encode_tuple(xs), config)
    assert not result.exhausted
    return decode_tuple(result.value, len(xs))


# Asserts that the compiled iso of f computes rpp_eval(f, xs)
def assert_simulates(f, xs, config=CONFIG):
    iso = compile_rpp(f)
    assert run_compiled(iso, xs, config) == rpp_eval(f, xs), (show_rpp(f), xs)


def test_primitive_encodings():
    assert pretty(compile_rpp(Id())).startswith('({ x <-> x } ::')
    assert '{ (x, y) <-> (y, x) }' in pretty(compile_rpp(Swap()))
    assert len(compile_rpp(S()).clauses) == 4
    assert len(compile_rpp(Sign()).clauses) == 3
    assert compile_rpp(P()) == invert(compile_rpp(S()))


def test_successor_of_zero():
    t = App(compile_rpp(S()), value_to_term(encode_int(0)))
    assert evaluate(t).value == encode_int(1)


def test_primitives_typed():
    for f in (S(), P(), Id(), Sign(), Swap()):
        assert type_iso(EMPTY_ISO_CTX, compile_rpp(f)) == IsoType(z_power(f.arity), z_power(f.arity))


def test_iteration_example():
    f = It(S())
    iso = compile_rpp(f)
    assert type_iso(EMPTY_ISO_CTX, iso) == IsoType(z_power(2), z_power(2))
    assert run_compiled(iso, [2, 3]) == (5, 3)
    rng = random.Random(200)
    for _ in range(200):
        xs = random_inputs(rng, 2)
        assert run_compiled(iso, xs) == rpp_eval(f, xs)


def test_iteration_aux_recurses_on_counter():
    dispatcher = compile_rpp(It(S()))
    aux = dispatcher.clauses[1].rhs.iso
    assert isinstance(aux, Fix)
    assert len(aux.body.clauses) == 2
    assert check_structural_recursion(aux) == RecInfo(2, 2, [CLOSED, 'n'])
    # both signed branches share the same auxiliary iso
    assert dispatcher.clauses[2].rhs.iso == aux


def test_selection_example():
    f = If(S(), Id(), P())
    assert_simulates(f, [4, -1])
    assert_simulates(f, [4, 0])
    assert_simulates(f, [4, 9])


def test_nested_iteration():
    f = It(Par(It(S()), Id()))
    assert type_iso(EMPTY_ISO_CTX, compile_rpp(f)) == IsoType(z_power(4), z_power(4))
    assert_simulates(f, [1, 2, 0, -3])


def test_compiled_isos_typed():
    rng = random.Random(4)
    for _ in range(200):
        f = random_rpp(rng)
        k = f.arity
        assert type_iso(EMPTY_ISO_CTX, compile_rpp(f)) == IsoType(z_power(k), z_power(k)), show_rpp(f)


def test_simulation():
    rng = random.Random(2024)
    for _ in range(200):
        f = random_rpp(rng)
        iso = compile_rpp(f)
        for _ in range(20):
            xs = random_inputs(rng, f.arity)
            assert run_compiled(iso, xs) == rpp_eval(f, xs), (show_rpp(f), xs)


def test_simulation_explicit_system():
    rng = random.Random(99)
    config = EvalConfig(fuel=1_000_000, system='explicit')
    for _ in range(30):
        f = random_rpp(rng, 3)
        for _ in range(3):
            assert_simulates(f, random_inputs(rng, f.arity), config)


def test_inverse_differs_from_compiled_inverse():
    f = Par(S(), P())
    dual = invert(compile_rpp(f))
    compiled = compile_rpp(rpp_invert(f))
    assert dual != compiled
    # the dual runs the lets in reverse order
    assert isinstance(dual, Clauses) and isinstance(dual.clauses[0].rhs, Let)
    assert dual.clauses[0].rhs.iso == compile_rpp(S())
    assert compiled.clauses[0].rhs.iso == compile_rpp(P())
    assert dual.clauses[0].rhs.body.iso == compile_rpp(P())
    assert invert(compile_rpp(Seq(S(), S()))) != compile_rpp(rpp_invert(Seq(S(), S())))
    rng = random.Random(3)
    for _ in range(50):
        xs = random_inputs(rng, 2)
        assert run_compiled(dual, xs) == run_compiled(compiled, xs) == rpp_eval(rpp_invert(f), xs)


def test_inverses_agree_on_fuzzed_inputs():
    rng = random.Random(77)
    for _ in range(100):
        f = random_rpp(rng, 3)
        dual, compiled = invert(compile_rpp(f)), compile_rpp(rpp_invert(f))
        for _ in range(5):
            ys = random_inputs(rng, f.arity)
            assert run_compiled(dual, ys) == run_compiled(compiled, ys), show_rpp(f)


def test_compiled_isos_reversible():
    rng = random.Random(12)
    for _ in range(50):
        f = random_rpp(rng, 3)
        iso = compile_rpp(f)
        v = encode_tuple(random_inputs(rng, f.arity))
        assert round_trip(iso, v, CONFIG) == v


def test_compile_source():
    text = compile_source(It(S()), name='iterate', args=[2, 3])
    assert text.startswith('-- It[S]\ndef iterate ::')
    source = parse(text)
    definition = source.get('iterate')
    assert type_iso(EMPTY_ISO_CTX, definition.iso) == definition.iso_type == IsoType(z_power(2), z_power(2))
    assert evaluate(source.main, CONFIG).value == encode_tuple([5, 3])
    assert 'main' not in compile_source(Swap())


def test_compiled_isos_reversible_exhaustive():
    programs = [S(), P(), Sign(), Swap(), Id(), It(S()), If(S(), Id(), P()), Seq(S(), Sign()), Par(S(), P())]
    for f in programs:
        iso = compile_rpp(f)
        annotation = iso_annotation(iso)
        for v in closed_values(annotation.lhs, 6)[:SWEEP_CAP]:
            assert round_trip(iso, v, CONFIG) == v, (show_rpp(f), v)

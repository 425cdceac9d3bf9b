import pytest

from nilpotent_as.base import (GFElem, FieldError, frobenius, get_field, gf_mul, index_in_Zplus, madd, split_p_power,
                               trace, trace_and_alpha0)


def test_f9_modulus_products(F9):
    g = F9.gen()
    assert g * g == g + 1
    assert g * F9.elem(1) == g
    assert g * F9.elem(0) == F9.elem(0)
    assert gf_mul(g, g) == g + 1


def test_frobenius_values(F5, F9):
    g = F9.gen()
    assert frobenius(g, 1) == g * 2 + 1
    assert frobenius(g, 2) == g
    for v in F5.elements():
        assert frobenius(F5.elem(v), 1) == F5.elem(v)


def test_alpha0():
    assert trace_and_alpha0(get_field(5)) == get_field(5).elem(1)
    F9 = get_field(3, 2)
    assert trace_and_alpha0(F9) == F9.gen()
    for p, n in ((3, 2), (3, 3), (5, 2), (7, 2), (2 + 1, 4)):
        F = get_field(p, n)
        assert trace(trace_and_alpha0(F)) == F.elem(1)


def test_mismatched_fields(F5, F9):
    with pytest.raises(ValueError):
        F5.elem(1) * F9.elem(1)


def test_even_or_composite_rejected():
    for p in (2, 4, 9):
        with pytest.raises(FieldError):
            get_field(p)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 1), (3, 3)])
def test_field_axioms_and_frobenius(rng, p, n):
    F = get_field(p, n)
    for _ in range(200):
        x, y, z = (F.elem(rng.randrange(F.q)) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        if x:
            assert x * x.inverse() == F.elem(1)
        assert frobenius(x * y) == frobenius(x) * frobenius(y)
        assert frobenius(x + y) == frobenius(x) + frobenius(y)
        assert frobenius(x, n) == x
        assert trace(frobenius(x)) == trace(x)
        assert trace(x + y) == trace(x) + trace(y)


def test_index_predicates(rng):
    assert index_in_Zplus((0, 3), 5)
    assert not index_in_Zplus((5, 0), 5)
    assert not index_in_Zplus((0, -1), 5)
    assert split_p_power((10, -25), 5) == ((2, -5), 1)
    for _ in range(200):
        a, b, c = (tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(3))
        if a < b:
            assert madd(a, c) < madd(b, c)


def test_elem_coercion(F9):
    assert isinstance(F9.gen() + 1, GFElem)
    assert F9.elem(F9.from_coords([1, 1])) == F9.gen() + 1

import pytest

import skewfiss as sf
from skewfiss.constructions import field_build, is_prime, prime_power
from skewfiss.spectra import assemble_tensor


def test_field_build_prime():
    f13 = field_build(13, 1)
    assert f13.primitive == 2
    assert f13.q == 13
    assert f13.sub(3, 7) == 9
    assert sorted(f13.exp) == list(range(1, 13))


def test_field_build_extension():
    f125 = field_build(5, 3)
    assert f125.q == 125
    assert len(f125.modulus) == 4 and f125.modulus[-1] == 1
    # exp table enumerates the whole multiplicative group
    assert sorted(f125.exp) == list(range(1, 125))
    # additive inverse round trip
    for x in (0, 1, 37, 124):
        assert f125.sub(x, x) == 0
        assert f125.add(f125.sub(0, x), x) == 0
    # multiplicative order of the primitive element is exactly 124
    assert f125.exp[0] == 1 and 1 not in f125.exp[1:]


def test_field_build_errors():
    with pytest.raises(ValueError):
        field_build(4, 1)
    with pytest.raises(ValueError):
        field_build(2, 21)  # beyond the size cap


def test_prime_helpers():
    assert is_prime(2) and is_prime(97) and not is_prime(1) and not is_prime(91)
    assert prime_power(125) == (5, 3)
    assert prime_power(12) is None


def test_cyc_skew_predicate():
    assert sf.cyc_skew_predicate(13, 1)
    assert not sf.cyc_skew_predicate(5, 2)  # 25 = 1 mod 8
    assert sf.cyc_skew_predicate(5, 3)  # 125 = 5 mod 8, odd degree
    with pytest.raises(ValueError):
        sf.cyc_skew_predicate(6, 1)


def test_cyclotomic_scheme_cases(cyc13):
    assert cyc13.n == 13 and cyc13.d == 4
    assert sf.is_skew_symmetric(cyc13)

    thin = sf.cyclotomic_scheme(5, 4)
    assert sf.intersection_tensor(thin).valencies == (1, 1, 1, 1, 1)

    paley = sf.cyclotomic_scheme(13, 2)
    T = sf.intersection_tensor(paley)
    assert T.valencies == (1, 6, 6)
    assert T[1, 1, 1] == 2 and T[1, 1, 2] == 3

    with pytest.raises(ValueError):
        sf.cyclotomic_scheme(13, 5)  # 5 does not divide 12
    with pytest.raises(ValueError):
        sf.cyclotomic_scheme(12, 2)  # not a prime power


def test_cyclotomic_number_examples():
    assert sf.cyclotomic_number(5, 2, 0, 0) == 0
    counts = [[sf.cyclotomic_number(13, 4, i, j) for j in range(4)] for i in range(4)]
    assert sum(sum(row) for row in counts) == 11  # q - 2
    f = 3
    for row in counts:
        assert sum(row) in (f - 1, f)


def test_cyclotomic_number_tensor_identity(cyc13):
    """Counted tensor entries equal the class counts, through the canonical
    reordering (positions 3 and 4 hold the third and fourth power classes
    swapped)."""
    T = sf.intersection_tensor(cyc13)
    pos_to_nat = [0, 1, 2, 4, 3]
    for i in range(1, 5):
        for j in range(1, 5):
            for k in range(1, 5):
                ni, nj, nk = pos_to_nat[i], pos_to_nat[j], pos_to_nat[k]
                assert T[i, j, k] == sf.cyclotomic_number(13, 4, (nj - ni) % 4, (nk - ni) % 4)


def test_two_squares():
    reps = sf.two_squares(85)
    assert [(t.g, t.h) for t in reps] == [(9, 1), (-7, 3)]
    assert [(t.g, t.h) for t in sf.two_squares(13)] == [(-3, 1)]
    assert sf.two_squares(21) == []
    assert sf.two_squares(1) == []
    with pytest.raises(ValueError):
        sf.two_squares(0)


def test_two_squares_unique_for_primes():
    for q in range(5, 326, 8):
        if is_prime(q):
            assert len(sf.two_squares(q)) == 1


def test_cyc4_closed_form_values():
    cf = sf.cyc4_closed_form(13, -3, 1)
    assert cf.abcde() == (0, 1, 2, 0, 1)
    cf5 = sf.cyc4_closed_form(5, 1, 1)
    assert cf5.abcde() == (0, 1, 0, 0, 0)
    # B1 of the 5-point case is a permutation matrix
    assert all(sum(row) == 1 for row in cf5.b1)
    assert all(sum(col) == 1 for col in zip(*cf5.b1))
    cf29 = sf.cyc4_closed_form(29, 5, 1)
    assert cf29.abcde() == (2, 3, 0, 2, 1)
    for col in zip(*cf29.b1):
        assert sum(col) == 7
    with pytest.raises(ValueError):
        sf.cyc4_closed_form(13, 1, 2)  # 1 + 16 != 13
    with pytest.raises(ValueError):
        sf.cyc4_closed_form(17, 1, 2)  # 17 = 1 mod 8


def test_counted_equals_closed_form(cyc13):
    T = sf.intersection_tensor(cyc13)
    cf = sf.cyc4_closed_form(13, -3, 1)
    assert T == assemble_tensor(cf.b1, cf.b2, (1, 3, 3, 3, 3))


def test_wreath_21_point(wreath_3_7, wreath_7_3):
    for scheme, f in ((wreath_3_7, 3), (wreath_7_3, 7)):
        assert scheme.n == 21 and scheme.d == 4
        assert sf.is_skew_symmetric(scheme)
        blocks = sf.imprimitive_blocks(scheme)
        assert blocks == [[0, 1, 4]]
        T = sf.intersection_tensor(scheme)
        # block relation pair has valency (f-1)/2, the across-block pair the rest
        across = (21 - f) // 2
        assert T.valencies == (1, (f - 1) // 2, across, across, (f - 1) // 2)


def test_wreath_trivial_identity():
    trivial = sf.AssociationScheme([[0]])
    c7 = sf.cyclotomic_scheme(7, 2)
    assert sf.wreath(trivial, c7) == c7


def test_wreath_block_structure(wreath_3_7):
    rel = wreath_3_7.rel
    # first block = first 3 points: inner relations only
    assert set(int(rel[x, y]) for x in range(3) for y in range(3) if x != y) == {1, 4}
    # across blocks: outer relations only
    assert set(int(rel[x, y]) for x in range(3) for y in range(3, 21)) <= {2, 3}


def test_conference_params():
    assert sf.conference_params(13) == (13, 6, 2, 3)
    assert sf.conference_params(5) == (5, 2, 0, 1)
    assert sf.conference_params(45) == (45, 22, 10, 11)
    with pytest.raises(ValueError):
        sf.conference_params(7)


def test_johnson2_params():
    assert sf.johnson2_params(7) == (21, 10, 5, 4)
    assert sf.johnson2_params(5) == (10, 6, 3, 4)
    assert sf.johnson2_params(15) == (105, 26, 13, 4)
    with pytest.raises(ValueError):
        sf.johnson2_params(4)


def test_johnson2_scheme_tensor(j52):
    T = sf.intersection_tensor(j52)
    assert T.valencies == (1, 6, 3)
    assert T[1, 1, 1] == 3 and T[1, 1, 2] == 4


def test_symmetrize_cyc4_equals_cyc2():
    for q in (13, 29, 37, 53):
        assert sf.symmetrize(sf.cyclotomic_scheme(q, 4)) == sf.cyclotomic_scheme(q, 2)

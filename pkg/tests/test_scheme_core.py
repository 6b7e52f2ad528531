import numpy as np
import pytest

import skewfiss as sf
from skewfiss.scheme_core import (
    AssociationScheme,
    FusionError,
    SchemeError,
    SchemeParseError,
    load_scheme,
    save_scheme,
)


def test_thin_z5_verifies_with_group_tensor(thin_z5):
    rep = sf.verify_axioms(thin_z5)
    assert rep.ok and thin_z5.d == 4
    T = rep.tensor
    for i in range(5):
        for j in range(5):
            for k in range(5):
                assert T[i, j, k] == (1 if (i + j) % 5 == k else 0)
    assert T.valencies == (1, 1, 1, 1, 1)


def test_cyc13_verifies(cyc13):
    rep = sf.verify_axioms(cyc13)
    assert rep.ok
    assert rep.transpose_map == [0, 4, 3, 2, 1]
    assert rep.tensor.valencies == (1, 3, 3, 3, 3)


def test_perturbed_scheme_fails_regularity(cyc13):
    rel = np.array(cyc13.rel)
    tmap = cyc13.transpose_map()
    # swap one transpose pair of cells to a different class pair, keeping
    # axioms (i)-(iii) intact so the failure lands on the counting axiom
    x, y = 0, 1
    old = int(rel[x, y])
    new = old % 4 + 1
    rel[x, y] = new
    rel[y, x] = tmap[new]
    rep = sf.verify_axioms(AssociationScheme(rel))
    assert rep.diagonal_ok and rep.partition_ok and rep.transpose_ok
    assert not rep.regular_ok
    assert not rep.ok


def test_single_entry_overwrite_fails(cyc13):
    rel = np.array(cyc13.rel)
    rel[0, 1] = rel[0, 1] % 4 + 1
    rep = sf.verify_axioms(AssociationScheme(rel))
    assert not rep.ok
    assert not rep.regular_ok


def test_constructor_rejects_bad_input():
    with pytest.raises(SchemeError):
        AssociationScheme([[0, 1, 1], [1, 0, 1]])  # not square
    with pytest.raises(SchemeError):
        AssociationScheme([[0, 9], [9, 0]], d=4)  # index out of range


def test_intersection_tensor_requires_valid_scheme():
    rel = [[0, 1, 1], [1, 0, 1], [2, 1, 0]]
    with pytest.raises(SchemeError):
        sf.intersection_tensor(AssociationScheme(rel))


def test_symmetrize_cyc13(cyc13):
    sym = sf.symmetrize(cyc13)
    assert sym.d == 2
    T = sf.intersection_tensor(sym)
    # conference graph on 13 points: k = 6, lam = 2, mu = 3
    assert T.valencies == (1, 6, 6)
    assert T[1, 1, 1] == 2 and T[1, 1, 2] == 3
    assert sym == sf.cyclotomic_scheme(13, 2)


def test_symmetrize_fixed_points(j52, thin_z5):
    assert sf.symmetrize(j52) == j52
    pent = sf.symmetrize(thin_z5)
    T = sf.intersection_tensor(pent)
    assert T.valencies == (1, 2, 2)
    assert T[1, 1, 1] == 0 and T[1, 1, 2] == 1  # pentagon = 5-point conference graph


def test_symmetrize_idempotent(cyc13):
    once = sf.symmetrize(cyc13)
    assert sf.symmetrize(once) == once


def test_fuse_orbit_partition_equals_symmetrize(cyc13):
    tmap = cyc13.transpose_map()
    blocks = [[0], [1, tmap[1]], sorted([2, tmap[2]])]
    assert sf.fuse(cyc13, blocks) == sf.symmetrize(cyc13)


def test_fuse_identity(cyc13):
    same = sf.fuse(cyc13, [[0], [1], [2], [3], [4]])
    assert same == cyc13


def test_fuse_rejects_non_closed_blocks(cyc13):
    with pytest.raises(FusionError):
        sf.fuse(cyc13, [[0], [1], [2, 3, 4]])  # {1}' = {4}, not a block


def test_fuse_admissible_but_not_scheme(cyc13):
    # {1,2}' = {4,3} is a block, so the partition is admissible, yet the
    # merged relations have non-constant path counts
    with pytest.raises(FusionError):
        sf.fuse(cyc13, [[0], [1, 2], [3, 4]])


def test_fuse_rejects_bad_partitions(cyc13):
    with pytest.raises(FusionError):
        sf.fuse(cyc13, [[0, 1], [2, 3, 4]])  # block 0 not a singleton
    with pytest.raises(FusionError):
        sf.fuse(cyc13, [[0], [1, 2]])  # does not cover


def test_is_skew_symmetric(cyc13, j52):
    assert sf.is_skew_symmetric(cyc13)
    assert not sf.is_skew_symmetric(j52)
    # 12 = (13-1)/2 even makes the squares closed under negation
    assert not sf.is_skew_symmetric(sf.cyclotomic_scheme(13, 2))


def test_imprimitive_blocks(wreath_3_7, cyc13, thin_z5):
    assert sf.imprimitive_blocks(wreath_3_7) == [[0, 1, 4]]
    assert sf.imprimitive_blocks(cyc13) == []
    assert sf.imprimitive_blocks(thin_z5) == []


def test_tensor_identities_on_corpus(cyc13, thin_z5, wreath_3_7, j52):
    for scheme in (cyc13, thin_z5, wreath_3_7, j52, sf.cyclotomic_scheme(29, 4)):
        rep = sf.verify_axioms(scheme)
        T, tmap = rep.tensor, rep.transpose_map
        d = scheme.d
        for i in range(d + 1):
            for j in range(d + 1):
                # p^0 column rule
                expected = T.valencies[i] if j == tmap[i] else 0
                assert T[i, j, 0] == expected
                for k in range(d + 1):
                    assert T[i, j, k] == T[tmap[j], tmap[i], tmap[k]]
                    assert T[i, j, k] == T[j, i, k]  # commutative (d <= 4)
        for i in range(d + 1):
            for k in range(d + 1):
                assert sum(T[i, j, k] for j in range(d + 1)) == T.valencies[i]


def test_skew_relation_sizes(cyc13, wreath_3_7):
    for scheme in (cyc13, wreath_3_7):
        tmap = scheme.transpose_map()
        sizes = scheme.relation_sizes()
        assert sizes[0] == scheme.n
        for i in range(1, scheme.d + 1):
            assert sizes[i] == sizes[tmap[i]]


def test_ascm_round_trip(tmp_path, cyc13):
    path = str(tmp_path / "c13.ascm")
    save_scheme(cyc13, path)
    again = load_scheme(path)
    assert again == cyc13
    with open(path, encoding="utf-8") as fh:
        assert fh.readline().strip() == "13 4"


@pytest.mark.parametrize(
    "content,line",
    [
        ("", 1),
        ("abc\n", 1),
        ("2\n0 1\n1 0\n", 1),
        ("2 1\n0 1\n1\n", 3),
        ("2 1\n0 x\n1 0\n", 2),
        ("2 1\n0 3\n1 0\n", 2),
        ("2 1\n1 1\n1 0\n", 2),  # diagonal must be relation 0
        ("3 1\n0 1 1\n1 0 1\n", 3),  # missing a row
    ],
)
def test_ascm_parse_errors(tmp_path, content, line):
    path = tmp_path / "bad.ascm"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(SchemeParseError) as err:
        load_scheme(str(path))
    assert err.value.line == line

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverstar import FieldCtx
from quiverstar import fieldops as fo
from quiverstar.qrep import (
    QRep,
    RootMultiset,
    _root_data,
    canonical_rep,
    decompose,
    direct_sum,
    dual_rep,
    end_dim,
    ext1_q_dim,
    generic_rep,
    hom_q_dim,
    hom_q_space,
    indecomposable,
    rep_of_multiset,
    zero_rep,
)
from quiverstar.quiver import builtin_quiver, euler_form, opposite, positive_roots

P = fo.DEFAULT_PRIME


def simple(q, i, p=P):
    return zero_rep(q, tuple(int(j == i) for j in range(q.n)), p)


class TestHomSpaces:
    def test_no_maps_between_a2_simples(self, a2):
        assert hom_q_dim(simple(a2, 0), simple(a2, 1)) == 0

    def test_identity_endomorphism(self, a2, ctx):
        x = generic_rep(a2, (2, 1), ctx)
        assert hom_q_dim(x, x) >= 1

    def test_simple_into_big(self, a2):
        mb = canonical_rep(a2, RootMultiset.parse("[1,1]", 2), P)
        assert hom_q_dim(simple(a2, 1), mb) == 1

    def test_basis_elements_intertwine(self, a3, ctx):
        x = generic_rep(a3, (1, 2, 1), ctx)
        y = generic_rep(a3, (2, 1, 1), ctx)
        for f in hom_q_space(x, y):
            for k, (s, t) in enumerate(a3.arrows):
                lhs = fo.matmul_mod(y.maps[k], f[s], P)
                rhs = fo.matmul_mod(f[t], x.maps[k], P)
                assert np.array_equal(lhs, rhs)


class TestExtDims:
    def test_a2_simples(self, a2):
        assert ext1_q_dim(simple(a2, 0), simple(a2, 1)) == 1
        assert ext1_q_dim(simple(a2, 1), simple(a2, 0)) == 0

    def test_indecomposables_are_rigid(self, a3):
        for beta in positive_roots(a3):
            m = canonical_rep(a3, RootMultiset.single(beta), P)
            assert ext1_q_dim(m, m) == 0

    def test_nonnegative_on_random_pairs(self, a3, ctx):
        rng = np.random.default_rng(3)
        for _ in range(200):
            dx = tuple(int(v) for v in rng.integers(0, 3, size=3))
            dy = tuple(int(v) for v in rng.integers(0, 3, size=3))
            x = generic_rep(a3, dx, ctx)
            y = generic_rep(a3, dy, ctx)
            val = ext1_q_dim(x, y)
            assert val >= 0
            assert hom_q_dim(x, y) - val == euler_form(a3, dx, dy)


class TestGenericAndIndecomposable:
    def test_zero_dim(self, a2, ctx):
        assert generic_rep(a2, (0, 0), ctx).total_dim == 0

    def test_generic_unit_dims_is_connected(self, a2, ctx):
        x = generic_rep(a2, (1, 1), ctx)
        assert decompose(x) == RootMultiset.parse("[1,1]", 2)

    def test_reproducible(self, a2):
        x = generic_rep(a2, (2, 2), FieldCtx(seed=5))
        y = generic_rep(a2, (2, 2), FieldCtx(seed=5))
        for mx, my in zip(x.maps, y.maps):
            assert np.array_equal(mx, my)

    def test_simple_root(self, a2, ctx):
        x = indecomposable(a2, (1, 0), ctx)
        assert x.dim == (1, 0)

    def test_a2_full_root(self, a2, ctx):
        x = indecomposable(a2, (1, 1), ctx)
        assert x.maps[0][0, 0] != 0

    def test_brick_certificate(self, a3, ctx):
        x = indecomposable(a3, (1, 1, 1), ctx)
        assert end_dim(x) == 1

    def test_not_a_root(self, a2, ctx):
        with pytest.raises(ValueError):
            indecomposable(a2, (2, 1), ctx)


class TestMultisetType:
    def test_grdim_additive(self):
        m = RootMultiset.parse("[1,1]+[1,0]^2", 2)
        n = RootMultiset.parse("[0,1]", 2)
        assert m.grdim() == (3, 1)
        assert (m + n).grdim() == (3, 2)

    def test_canonical_string_sorted(self):
        m = RootMultiset({(1, 1): 1, (0, 1): 2, (1, 0): 1}, 2)
        assert str(m) == "[0,1]^2+[1,0]+[1,1]"

    def test_empty(self):
        m = RootMultiset.empty(3)
        assert str(m) == "0"
        assert RootMultiset.parse("0", 3) == m
        assert m.grdim() == (0, 0, 0)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            RootMultiset.parse("[1,2)+[1]", 2)

    @given(
        mults=st.lists(
            st.tuples(st.sampled_from([(0, 1), (1, 0), (1, 1)]), st.integers(1, 3)),
            max_size=4,
        )
    )
    @settings(max_examples=80, deadline=None)
    def test_grammar_round_trip(self, mults):
        counts = {}
        for root, k in mults:
            counts[root] = counts.get(root, 0) + k
        m = RootMultiset(counts, 2)
        assert RootMultiset.parse(str(m), 2) == m


class TestRepOfMultiset:
    def test_semisimple(self, a2, ctx):
        m = RootMultiset.parse("[1,0]+[0,1]", 2)
        x = rep_of_multiset(a2, m, ctx)
        assert x.dim == (1, 1)
        assert not np.any(x.maps[0])

    def test_empty(self, a2, ctx):
        assert rep_of_multiset(a2, RootMultiset.empty(2), ctx).total_dim == 0

    def test_full_root(self, a2, ctx):
        x = rep_of_multiset(a2, RootMultiset.parse("[1,1]", 2), ctx)
        assert np.any(x.maps[0])


class TestDecompose:
    def test_semisimple_zero_maps(self, a2):
        x = zero_rep(a2, (1, 1), P)
        assert decompose(x) == RootMultiset.parse("[1,0]+[0,1]", 2)

    def test_zero_rep(self, a3):
        assert decompose(zero_rep(a3, (0, 0, 0), P)) == RootMultiset.empty(3)

    def test_exhaustive_a2_round_trip(self, a2, ctx):
        roots = list(positive_roots(a2))
        sizes = [sum(b) for b in roots]
        for mults in itertools.product(range(5), repeat=len(roots)):
            if 0 < sum(m * s for m, s in zip(mults, sizes)) <= 8:
                m = RootMultiset(
                    {r: k for r, k in zip(roots, mults) if k}, 2
                )
                assert decompose(rep_of_multiset(a2, m, ctx)) == m

    def test_random_a3_round_trip(self, a3, ctx):
        roots = list(positive_roots(a3))
        rng = np.random.default_rng(4)
        done = 0
        while done < 50:
            counts = {}
            total = 0
            for _ in range(int(rng.integers(1, 4))):
                b = roots[int(rng.integers(0, len(roots)))]
                counts[b] = counts.get(b, 0) + 1
                total += sum(b)
            if total > 8:
                continue
            m = RootMultiset(counts, 3)
            assert decompose(rep_of_multiset(a3, m, ctx)) == m
            done += 1

    def test_sampled_d4_round_trip(self, d4, ctx):
        roots = list(positive_roots(d4))
        rng = np.random.default_rng(5)
        done = 0
        while done < 25:
            counts = {}
            total = 0
            for _ in range(int(rng.integers(1, 3))):
                b = roots[int(rng.integers(0, len(roots)))]
                counts[b] = counts.get(b, 0) + 1
                total += sum(b)
            if total > 8:
                continue
            m = RootMultiset(counts, 4)
            assert decompose(rep_of_multiset(d4, m, ctx)) == m
            done += 1

    @pytest.mark.parametrize("name", ["A2", "A3", "A4", "D4"])
    def test_hom_matrix_invertible(self, name):
        q = builtin_quiver(name)
        data = _root_data(q, P)
        n = len(data.roots)
        # full rank mod p certifies a nonzero determinant over the rationals
        assert fo.rank(data.hom_matrix % P, P) == n


class TestDuality:
    def test_simples_self_dual(self, a2):
        x = simple(a2, 0)
        xd = dual_rep(x)
        assert xd.dim == x.dim
        assert decompose(xd) == RootMultiset.parse("[1,0]", 2)

    def test_multiset_preserved_over_opposite(self, a3, ctx):
        m = RootMultiset.parse("[1,1,0]+[0,1,1]+[0,0,1]", 3)
        x = rep_of_multiset(a3, m, ctx)
        assert decompose(dual_rep(x)) == m

    def test_grdim_preserved_and_involution(self, a3, ctx):
        x = generic_rep(a3, (2, 1, 2), ctx)
        xd = dual_rep(x)
        assert xd.dim == x.dim
        xdd = dual_rep(xd)
        assert xdd.quiver == a3
        for m1, m2 in zip(x.maps, xdd.maps):
            assert np.array_equal(m1, m2)


def test_direct_sum_dims(a3, ctx):
    x = generic_rep(a3, (1, 1, 0), ctx)
    y = generic_rep(a3, (0, 1, 1), ctx)
    s = direct_sum([x, y])
    assert s.dim == (1, 2, 1)
    assert hom_q_dim(s, s) == (
        hom_q_dim(x, x) + hom_q_dim(x, y) + hom_q_dim(y, x) + hom_q_dim(y, y)
    )

import itertools
import json

import numpy as np
import pytest

from quiverstar.errors import NotDynkinError
from quiverstar.quiver import (
    Quiver,
    builtin_quiver,
    dim_g,
    dim_r_q,
    euler_form,
    is_dynkin,
    load_quiver,
    opposite,
    positive_roots,
    sym_form,
)


def brute_force_roots(q, coord_bound=6):
    """Box enumeration of all vectors with unit form value (test oracle)."""
    out = []
    for d in itertools.product(range(coord_bound + 1), repeat=q.n):
        if any(d) and euler_form(q, d, d) == 1:
            out.append(d)
    return sorted(out)


class TestEulerForm:
    def test_a2_simples(self, a2):
        assert euler_form(a2, (1, 0), (0, 1)) == -1
        assert euler_form(a2, (0, 1), (1, 0)) == 0

    def test_zero_vector(self, a2, d4):
        assert euler_form(a2, (0, 0), (3, 5)) == 0
        assert euler_form(d4, (0,) * 4, (1, 2, 3, 4)) == 0

    def test_a2_diagonal(self, a2):
        assert euler_form(a2, (1, 1), (1, 1)) == 1

    def test_length_mismatch(self, a2):
        with pytest.raises(ValueError):
            euler_form(a2, (1, 0, 0), (0, 1))


class TestSymForm:
    def test_a2_values(self, a2):
        assert sym_form(a2, (1, 0), (0, 1)) == -1
        assert sym_form(a2, (1, 1), (1, 1)) == 2

    def test_symmetric_and_doubling(self, a3):
        rng = np.random.default_rng(0)
        for _ in range(50):
            d = tuple(int(x) for x in rng.integers(0, 5, size=3))
            e = tuple(int(x) for x in rng.integers(0, 5, size=3))
            assert sym_form(a3, d, e) == sym_form(a3, e, d)
            assert sym_form(a3, d, d) == 2 * euler_form(a3, d, d)

    def test_ambient_dimension_identity(self, a3):
        # (d,d) = 2(dim G - dim of the representation space)
        rng = np.random.default_rng(1)
        for _ in range(30):
            d = tuple(int(x) for x in rng.integers(0, 5, size=3))
            assert sym_form(a3, d, d) == 2 * (dim_g(d) - dim_r_q(a3, d))


class TestDynkinRecognition:
    def test_builtins(self):
        for name in ("A2", "A3", "A4", "D4"):
            ok, label = is_dynkin(builtin_quiver(name))
            assert ok and label == name

    def test_two_cycle(self):
        q = Quiver(("1", "2"), ((0, 1), (1, 0)))
        ok, label = is_dynkin(q)
        assert not ok and label is None

    def test_single_vertex(self):
        assert is_dynkin(Quiver(("1",), ())) == (True, "A1")

    def test_disconnected(self):
        q = Quiver(("1", "2", "3"), ((0, 1),))
        assert is_dynkin(q) == (True, "A2+A1")

    def test_triangle(self):
        q = Quiver(("1", "2", "3"), ((0, 1), (1, 2), (0, 2)))
        assert is_dynkin(q)[0] is False

    def test_four_armed_star(self):
        q = Quiver(tuple("12345"), ((0, 4), (1, 4), (2, 4), (3, 4)))
        assert is_dynkin(q)[0] is False

    def test_e_series(self):
        # E6: arms of lengths 1, 2, 2 from the trivalent vertex
        arrows = ((0, 1), (1, 2), (2, 3), (3, 4), (5, 2))
        assert is_dynkin(Quiver(tuple("123456"), arrows)) == (True, "E6")

    def test_loop_rejected_at_construction(self):
        with pytest.raises(ValueError):
            Quiver(("1",), ((0, 0),))


class TestPositiveRoots:
    def test_a2_exact(self, a2):
        assert list(positive_roots(a2)) == [(0, 1), (1, 0), (1, 1)]

    def test_counts(self, a3, d4):
        assert len(positive_roots(a3)) == 6
        assert len(positive_roots(d4)) == 12
        assert len(positive_roots(builtin_quiver("A4"))) == 10

    @pytest.mark.parametrize("name", ["A2", "A3", "A4", "D4"])
    def test_matches_box_enumeration(self, name):
        q = builtin_quiver(name)
        assert list(positive_roots(q)) == brute_force_roots(q)

    def test_unit_form_value(self, d4):
        for beta in positive_roots(d4):
            assert euler_form(d4, beta, beta) == 1

    def test_a_type_roots_are_zero_one(self, a3):
        for beta in positive_roots(a3):
            assert set(beta) <= {0, 1}

    def test_d4_highest_root_has_a_two(self, d4):
        assert (1, 1, 1, 2) in positive_roots(d4)

    def test_non_dynkin_rejected(self):
        q = Quiver(("1", "2"), ((0, 1), (1, 0)))
        with pytest.raises(NotDynkinError):
            positive_roots(q)


class TestOpposite:
    def test_a2(self, a2):
        assert opposite(a2).arrows == ((1, 0),)

    def test_involution(self, d4):
        assert opposite(opposite(d4)) == d4

    def test_euler_swap(self, a3):
        qop = opposite(a3)
        rng = np.random.default_rng(2)
        for _ in range(30):
            d = tuple(int(x) for x in rng.integers(0, 4, size=3))
            e = tuple(int(x) for x in rng.integers(0, 4, size=3))
            assert euler_form(qop, d, e) == euler_form(a3, e, d)


class TestLoading:
    def test_builtin_via_loader(self):
        assert load_quiver("A3") == builtin_quiver("A3")

    def test_json_file(self, tmp_path):
        payload = {"vertices": ["1", "2", "3"], "arrows": [["1", "2"], ["3", "2"]]}
        path = tmp_path / "q.json"
        path.write_text(json.dumps(payload))
        q = load_quiver(str(path))
        assert q.vertices == ("1", "2", "3")
        assert q.arrows == ((0, 1), (2, 1))
        assert is_dynkin(q) == (True, "A3")

    def test_unknown_builtin(self):
        with pytest.raises((ValueError, OSError)):
            load_quiver("E99")

import json
from fractions import Fraction

import numpy as np
import pytest

from rescode import (
    Codebook,
    DuplicateLeafError,
    IncompleteCodebookError,
    Pmf,
    PrefixViolationError,
    leaf_distribution,
    product_codebook,
    validate_complete,
)


class TestValidateComplete:
    def test_valid_binary(self):
        cb = validate_complete([(0, 0), (0, 1), (1,)], 2)
        assert cb.leaves == ((0, 0), (0, 1), (1,))
        assert len(cb) == 3

    def test_sorts_canonically(self):
        cb = validate_complete([(1,), (0, 1), (0, 0)], 2)
        assert cb.leaves == ((0, 0), (0, 1), (1,))

    def test_prefix_violation(self):
        with pytest.raises(PrefixViolationError):
            validate_complete([(0,), (0, 1)], 2)

    def test_incomplete_reports_exact_deficit(self):
        with pytest.raises(IncompleteCodebookError) as exc:
            validate_complete([(0,)], 2)
        assert exc.value.deficit == Fraction(1, 2)

    def test_duplicate(self):
        with pytest.raises(DuplicateLeafError):
            validate_complete([(0,), (0,), (1,)], 2)

    def test_symbol_out_of_range(self):
        with pytest.raises(ValueError):
            validate_complete([(0,), (2,)], 2)

    def test_max_len_cap(self):
        deep = [(0,) * 65, *[(0,) * k + (1,) for k in range(65)]]
        with pytest.raises(ValueError):
            validate_complete(deep, 2)
        cb = validate_complete(deep, 2, max_len=None)
        assert cb.max_len() == 65

    def test_ternary(self):
        cb = validate_complete([(0,), (1,), (2, 0), (2, 1), (2, 2)], 3)
        assert len(cb) == 5


class TestLeafDistribution:
    def test_hand_products(self):
        p = Pmf([0.8, 0.2])
        ld = leaf_distribution(p, validate_complete([(0, 0), (0, 1), (1,)], 2))
        assert ld.leaf_probs == pytest.approx([0.64, 0.16, 0.2], abs=1e-15)
        assert ld.expected_len == pytest.approx(1.8, abs=1e-12)

    def test_uniform_depth2(self):
        ld = leaf_distribution(Pmf([0.5, 0.5]), product_codebook(2, 2))
        assert ld.leaf_probs == pytest.approx([0.25] * 4, abs=1e-15)
        assert ld.expected_len == pytest.approx(2.0, abs=1e-12)

    def test_identity_codebook(self):
        ld = leaf_distribution(Pmf([0.211, 0.789]), validate_complete([(0,), (1,)], 2))
        assert ld.leaf_probs == pytest.approx([0.211, 0.789], abs=1e-15)
        assert ld.expected_len == pytest.approx(1.0, abs=1e-12)

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            leaf_distribution(Pmf([0.5, 0.3, 0.2]), product_codebook(2, 2))

    def test_zero_probability_symbol_rejected(self):
        with pytest.raises(ValueError):
            leaf_distribution(Pmf([1.0, 0.0]), product_codebook(2, 2))

    def test_random_split_trees_sum_to_one(self):
        # grow trees by random leaf splits; completeness is preserved
        rng = np.random.default_rng(7)
        for _ in range(50):
            d = int(rng.integers(2, 4))
            leaves = [(a,) for a in range(d)]
            for _ in range(int(rng.integers(0, 40))):
                i = int(rng.integers(0, len(leaves)))
                path = leaves.pop(i)
                leaves.extend(path + (a,) for a in range(d))
            cb = validate_complete(leaves, d)
            probs = rng.dirichlet(np.ones(d)) * 0.9 + 0.1 / d
            ld = leaf_distribution(Pmf(probs / probs.sum()), cb)
            assert ld.leaf_probs.sum() == pytest.approx(1.0, abs=1e-9)
            assert ld.expected_len >= 1.0


class TestProductCodebook:
    def test_depth2_binary(self):
        assert product_codebook(2, 2).leaves == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_ternary_depth1(self):
        assert product_codebook(3, 1).leaves == ((0,), (1,), (2,))

    def test_depth12(self):
        cb = product_codebook(2, 12)
        assert len(cb) == 4096
        assert all(len(x) == 12 for x in cb.leaves)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            product_codebook(2, 12, max_leaves=1000)

    def test_matches_product_distribution(self):
        p = Pmf([0.3, 0.2, 0.5])
        ld = leaf_distribution(p, product_codebook(3, 4))
        expected = np.ones(1)
        for _ in range(4):
            expected = np.kron(expected, p.probs)
        assert np.max(np.abs(ld.leaf_probs - expected)) < 1e-12


class TestJson:
    def test_round_trip(self):
        cb = validate_complete([(0, 0), (0, 1), (1,)], 2)
        blob = json.dumps(cb.to_json(), sort_keys=True)
        again = Codebook.from_json(json.loads(blob))
        assert again.leaves == cb.leaves
        assert json.dumps(again.to_json(), sort_keys=True) == blob

    def test_digit_strings(self):
        assert validate_complete([(0,), (1, 0), (1, 1)], 2).to_json()["leaves"] == ["0", "10", "11"]

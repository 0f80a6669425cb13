import json
import math

import numpy as np
import pytest

from rescode import (
    ArrayBitSource,
    BitSourceExhausted,
    FileBitSource,
    Pmf,
    RandomBitSource,
    ResolutionCode,
    build_code,
    encode_word,
    entropy,
    generate_stream,
    induced_distribution,
)


@pytest.fixture
def running_code():
    return build_code(Pmf([0.8, 0.2]), 3, 3)


class TestBuildCode:
    def test_running_example(self, running_code):
        code = running_code
        assert code.codebook.leaves == ((0, 0), (0, 1), (1,))
        assert list(code.counts.counts) == [5, 1, 2]
        assert list(code.cum) == [0, 5, 6, 8]
        assert code.scheme == "f2v"

    def test_trivial_one_bit(self):
        code = build_code(Pmf([0.5, 0.5]), 2, 1)
        assert list(code.counts.counts) == [1, 1]
        assert encode_word(code, 0) == (0,)
        assert encode_word(code, 1) == (1,)

    def test_experiment_excess(self):
        code = build_code(Pmf([0.211, 0.789]), 3072, 12)
        assert code.n_bits == pytest.approx(math.log2(3072), abs=1e-12)
        assert code.q_bits == pytest.approx(12 - math.log2(3072), abs=1e-12)
        assert code.q_bits == pytest.approx(0.41504, abs=1e-5)

    def test_m_cap(self):
        with pytest.raises(ValueError):
            build_code(Pmf([0.5, 0.5]), 2, 63)


class TestEncodeWord:
    @pytest.mark.parametrize("u,leaf", [(0, (0, 0)), (4, (0, 0)), (5, (0, 1)), (6, (1,)), (7, (1,))])
    def test_range_table(self, running_code, u, leaf):
        assert encode_word(running_code, u) == leaf

    def test_out_of_range(self, running_code):
        with pytest.raises(ValueError):
            encode_word(running_code, 8)
        with pytest.raises(ValueError):
            encode_word(running_code, -1)


class TestInducedDistribution:
    def test_exhaustive_equals_counts(self, running_code):
        ind = induced_distribution(running_code)
        assert ind.denominator == 8
        assert list(ind.counts) == [5, 1, 2]

    def test_trivial(self):
        code = build_code(Pmf([0.5, 0.5]), 2, 1)
        assert list(induced_distribution(code).counts) == [1, 1]

    def test_counts_sum_invariant(self):
        code = build_code(Pmf([0.3, 0.7]), 6, 9)
        assert int(code.counts.counts.sum()) == 2**9

    def test_exhaustive_over_random_codes(self):
        rng = np.random.default_rng(41)
        for _ in range(15):
            p = Pmf(rng.dirichlet(np.ones(2)) * 0.9 + 0.05)
            m = int(rng.integers(2, 13))
            n_cw = int(rng.integers(2, min(2**m, 200) + 1))
            code = build_code(p, n_cw, m)
            assert np.array_equal(induced_distribution(code).counts, code.counts.counts)


class TestInvariants:
    def test_input_entropy_dominates_output(self):
        # fixed-length dictionary: E[len(U)] = m = H(U) >= H(f(U))
        rng = np.random.default_rng(43)
        for _ in range(10):
            p = Pmf(rng.dirichlet(np.ones(3)) * 0.85 + 0.05)
            m = int(rng.integers(3, 11))
            code = build_code(p, 3 + 2 * int(rng.integers(0, 20)), m)
            assert entropy(code.counts) <= m + 1e-12

    def test_max_prob_bound(self):
        rng = np.random.default_rng(47)
        for _ in range(20):
            p = Pmf(rng.dirichlet(np.ones(2)) * 0.9 + 0.05)
            m = int(rng.integers(2, 13))
            n_cw = int(rng.integers(2, min(2**m, 500) + 1))
            code = build_code(p, n_cw, m)
            bound = 1.0 / (n_cw * p.mu()) + 2.0**-m
            assert code.counts.probs().max() <= bound + 1e-12

    def test_deterministic_json(self):
        p = Pmf([0.211, 0.789])
        a = json.dumps(build_code(p, 48, 9).to_json(), sort_keys=True)
        b = json.dumps(build_code(p, 48, 9).to_json(), sort_keys=True)
        assert a == b

    def test_json_round_trip(self, running_code):
        blob = json.dumps(running_code.to_json(), sort_keys=True)
        again = ResolutionCode.from_json(json.loads(blob))
        assert json.dumps(again.to_json(), sort_keys=True) == blob
        assert list(again.cum) == list(running_code.cum)

    def test_json_rejects_inconsistent_counts(self, running_code):
        blob = running_code.to_json()
        blob["counts"] = [4, 1, 2]  # does not sum to 2^m
        with pytest.raises(ValueError):
            ResolutionCode.from_json(blob)


class TestGenerateStream:
    def test_bits_000_101(self, running_code):
        res = generate_stream(running_code, ArrayBitSource("000101"), 2)
        assert list(res.symbols) == [0, 0, 0, 1]
        assert res.input_bits == 6
        assert res.output_symbols == 4
        assert list(res.leaf_counts) == [1, 1, 0]

    def test_exhaustion_reports_partial(self, running_code):
        with pytest.raises(BitSourceExhausted) as exc:
            generate_stream(running_code, ArrayBitSource("000101"), 3)
        assert list(exc.value.result.symbols) == [0, 0, 0, 1]
        assert exc.value.result.input_bits == 6

    def test_seeded_determinism(self, running_code):
        a = generate_stream(running_code, RandomBitSource(1), 100)
        b = generate_stream(running_code, RandomBitSource(1), 100)
        assert np.array_equal(a.symbols, b.symbols)

    def test_pinned_bit_stream(self):
        # seed 1 must always yield these bits: the MSB-first bits of the
        # generator's first 64-bit draw (stream stability is documented)
        first_word = 9441442522235856127
        expected = format(first_word, "064b")[:16]
        got = "".join(str(b) for b in RandomBitSource(1).take_bits(16))
        assert got == expected == "1000001100000110"

    def test_chunking_matches_one_shot(self, running_code):
        one = generate_stream(running_code, RandomBitSource(9), 64)
        src = RandomBitSource(9)
        parts = [generate_stream(running_code, src, k).symbols for k in (10, 30, 24)]
        assert np.array_equal(one.symbols, np.concatenate(parts))

    def test_file_source_msb_first(self, running_code, tmp_path):
        path = tmp_path / "bits.bin"
        path.write_bytes(bytes([0b00010100]))
        res = generate_stream(running_code, FileBitSource(path), 2)
        assert list(res.symbols) == [0, 0, 0, 1]

    def test_statistical_agreement(self):
        # large seeded run: empirical codeword frequencies approach counts/2^m
        p = Pmf([0.211, 0.789])
        code = build_code(p, 64, 9)
        res = generate_stream(code, RandomBitSource(123), 200_000)
        emp = res.leaf_counts / res.leaf_counts.sum()
        tv = np.abs(emp - code.counts.probs()).sum()
        assert tv < 0.02

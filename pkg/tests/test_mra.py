from fractions import Fraction

import pytest

from padicframes.affine import act_on_function, affine, stabilizer_spec
from padicframes.cyclotomic import CycloNumber, root_of_unity
from padicframes.errors import SpanError
from padicframes.mra import (
    GramSummary,
    scaling_relation_check,
    scaling_shift_gram,
    solve_in_span,
    span_probe,
    wavelet_space_gram,
)
from padicframes.padic import CosetRepresentative, ppow
from padicframes.wavelets import EXACT, TestFunction, wavelet_index


def two_scale_function(p=3):
    return TestFunction.single(wavelet_index(0, 0, 1, p)) \
        + TestFunction.single(wavelet_index(1, 0, 1, p))


class TestScalingShiftGram:
    def test_single_shift(self):
        assert scaling_shift_gram(3, [Fraction(0)]) == [[1]]

    def test_disjoint_shifts(self):
        gram = scaling_shift_gram(3, [Fraction(0), Fraction(1, 3)])
        assert gram == [[1, 0], [0, 1]]

    def test_equivalent_shifts_share_a_ball(self):
        gram = scaling_shift_gram(3, [Fraction(0), Fraction(1)])
        assert gram == [[1, 1], [1, 1]]

    def test_canonical_grid_gives_identity(self):
        p = 3
        shifts = []
        for t in range(27):
            value = sum(((t // p**i) % p) * ppow(p, -3 + i) for i in range(3))
            shifts.append(CosetRepresentative(p, value, 0))
        gram = scaling_shift_gram(p, shifts)
        for i in range(27):
            for k in range(27):
                assert gram[i][k] == (1 if i == k else 0)


class TestWaveletSpaceGram:
    def test_fixed_scale_spaces_always_orthogonal(self):
        p = 3
        f = TestFunction(p, EXACT, {
            wavelet_index(0, 0, 1, p): CycloNumber.from_rational(1, p),
            wavelet_index(0, Fraction(1, 3), 2, p): CycloNumber.from_rational(2, p),
        })
        spec = stabilizer_spec(f)
        for d in (1, 2, 3):
            summary = wavelet_space_gram(f, spec, 0, d, truncation=1)
            assert summary.orthogonal and summary.max_abs_entry == 0.0

    def test_orthogonal_beyond_scale_spread(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        assert f.scale_spread() == 1
        summary = wavelet_space_gram(f, spec, 0, 2, truncation=1)
        assert summary.orthogonal

    def test_adjacent_spaces_overlap_witness(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        summary = wavelet_space_gram(f, spec, 0, 1, truncation=1)
        assert not summary.orthogonal
        assert summary.max_abs_entry > 0.5  # the shared term contributes 1

    def test_summary_counts_entries(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        summary = wavelet_space_gram(f, spec, 0, 2, truncation=0)
        gens = span_probe(f, spec, 0, 0).generators
        assert isinstance(summary, GramSummary)
        assert summary.entries == len(gens) ** 2


class TestSolveInSpan:
    def test_expresses_member(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        probe = span_probe(f, spec, 0, 1)
        zeta = root_of_unity(1, 3)
        target = probe.generators[0].scaled(zeta) \
            + probe.generators[1].scaled(CycloNumber.from_rational(2, 3))
        solution = solve_in_span(probe.generators, target)
        assert solution is not None
        recombined = TestFunction(3, EXACT, {})
        for coeff, gen in zip(solution, probe.generators):
            if not coeff.is_zero():
                recombined = recombined + gen.scaled(coeff)
        assert recombined == target

    def test_rejects_outsider(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        probe = span_probe(f, spec, 0, 1)
        outsider = TestFunction.single(wavelet_index(-2, Fraction(1, 9), 2, 3))
        assert solve_in_span(probe.generators, outsider) is None


class TestScalingRelation:
    def test_generator_dilates_into_next_space(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        gens = span_probe(f, spec, 0, 1).generators
        assert scaling_relation_check(f, spec, gens[0], 0, truncation=1)

    def test_combination_dilates_into_next_space(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        gens = span_probe(f, spec, 0, 1).generators
        member = gens[0] + gens[3].scaled(root_of_unity(2, 3))
        assert scaling_relation_check(f, spec, member, 0, truncation=1)

    def test_outside_span_reported(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        outsider = TestFunction.single(wavelet_index(-2, Fraction(1, 9), 2, 3))
        with pytest.raises(SpanError):
            scaling_relation_check(f, spec, outsider, 0, truncation=1)

    def test_dilation_maps_generator_set_bijectively(self):
        f = two_scale_function()
        spec = stabilizer_spec(f)
        source = span_probe(f, spec, 0, 1)
        target = span_probe(f, spec, 1, 1)
        dilation = affine(3, 0, 3)
        images = [act_on_function(dilation, gen) for gen in source.generators]
        for image, idx_label in zip(images, source.labels):
            matches = [k for k, gen in enumerate(target.generators) if gen == image]
            assert len(matches) == 1
            assert target.labels[matches[0]].J == idx_label.J
            assert target.labels[matches[0]].n == idx_label.n

"""Seeded random instances and named constructed instances.

Random draws are pure functions of the supplied ``random.Random`` state, so
a fixed seed reproduces a run byte for byte.  The generic generator draws
coefficients with pairwise distinct squared moduli: a group element fixing
the expansion must then fix every term individually (the action permutes
terms and multiplies by unimodular phases), so the stabilizer provably
equals the intersection of the per-term stabilizers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .affine import AffineElement, act_on_function, affine, power
from .cyclotomic import CycloNumber, root_of_unity
from .errors import PadicError
from .padic import ppow
from .wavelets import EXACT, TestFunction, WaveletIndex, wavelet_index


def random_translation(rng: random.Random, p: int, max_digits: int = 2) -> Fraction:
    """Canonical representative modulo Z_p with at most max_digits digits."""
    depth = rng.randint(0, max_digits)
    if depth == 0:
        return Fraction(0)
    value = Fraction(rng.randint(1, p - 1), p**depth)
    for pos in range(-depth + 1, 0):
        value += rng.randint(0, p - 1) * ppow(p, pos)
    return value


def random_index(rng: random.Random, p: int, gamma_range=(-2, 2),
                 max_digits: int = 2) -> WaveletIndex:
    gamma = rng.randint(*gamma_range)
    n = random_translation(rng, p, max_digits)
    j = rng.randint(1, p - 1)
    return wavelet_index(gamma, n, j, p)


def random_cyclo(rng: random.Random, p: int, magnitude: int = 3) -> CycloNumber:
    while True:
        out = CycloNumber.zero(p)
        for _ in range(rng.randint(1, 2)):
            c = rng.choice([k for k in range(-magnitude, magnitude + 1) if k])
            out = out + root_of_unity(rng.randrange(p), p).scale(c)
        if not out.is_zero():
            return out


def random_complex(rng: random.Random, magnitude: int = 3) -> complex:
    while True:
        z = complex(rng.randint(-magnitude, magnitude),
                    rng.randint(-magnitude, magnitude))
        if z != 0:
            return z


def random_test_function(rng: random.Random, p: int, max_terms: int = 4,
                         gamma_range=(-2, 2), max_digits: int = 2,
                         mode: str = EXACT,
                         n_terms: Optional[int] = None) -> TestFunction:
    count = n_terms if n_terms is not None else rng.randint(1, max_terms)
    indices: set[WaveletIndex] = set()
    while len(indices) < count:
        indices.add(random_index(rng, p, gamma_range, max_digits))
    terms = {}
    for idx in sorted(indices, key=lambda i: i.sort_key):
        terms[idx] = random_cyclo(rng, p) if mode == EXACT else random_complex(rng)
    return TestFunction(p, mode, terms)


def random_generic_function(rng: random.Random, p: int, max_terms: int = 4,
                            gamma_range=(-2, 2), max_digits: int = 2) -> TestFunction:
    """Random expansion whose coefficient squared moduli are pairwise
    distinct, which certifies genericity outright (see module docstring)."""
    count = rng.randint(1, max_terms)
    indices: set[WaveletIndex] = set()
    while len(indices) < count:
        indices.add(random_index(rng, p, gamma_range, max_digits))
    ordered = sorted(indices, key=lambda i: i.sort_key)
    while True:
        coeffs = [random_cyclo(rng, p) for _ in ordered]
        squares = [c.norm_sq() for c in coeffs]
        if all(squares[i] != squares[k]
               for i in range(len(squares)) for k in range(i + 1, len(squares))):
            break
    return TestFunction(p, EXACT, dict(zip(ordered, coeffs)))


def random_affine(rng: random.Random, p: int, valuation_range=(-2, 2),
                  translation_digits: int = 2, magnitude: int = 9) -> AffineElement:
    """Group element with p-power denominators and desk-scale digits."""
    while True:
        unit = rng.randint(-magnitude, magnitude)
        if unit and unit % p:
            break
    a = unit * ppow(p, rng.randint(*valuation_range))
    b = Fraction(rng.randint(-magnitude * p, magnitude * p),
                 p**rng.randint(0, translation_digits))
    return affine(a, b, p)


# ---------------------------------------------------------------------------
# Named instances
# ---------------------------------------------------------------------------


def _order_p_minus_1_unit(p: int) -> int:
    """A unit of multiplicative order exactly p-1 modulo p**2, returned as
    the balanced (smallest-magnitude) integer representative."""
    if p == 2:
        raise PadicError("needs an odd prime")
    mod = p * p
    for r in range(2, mod):
        if r % p in (0, 1):
            continue
        if pow(r, p - 1, mod) != 1:
            continue
        order = 1
        acc = r
        while acc % mod != 1:
            acc = acc * r % mod
            order += 1
        if order == p - 1:
            return r - mod if r > mod // 2 else r
    raise PadicError(f"no order-{p - 1} unit found modulo {mod}")


def non_generic_example(p: int = 3, j: int = 1) -> tuple[TestFunction, AffineElement]:
    """A mean-zero expansion fixed by a rotation that fixes none of its
    terms: sum over i of the i-th power of (r, 0) applied to the wavelet
    supported on |x - 1| <= 1/p, where r has order p-1 modulo p**2.
    Returns the function and the extra symmetry."""
    r = _order_p_minus_1_unit(p)
    witness = affine(r, 0, p)
    seed = TestFunction.single(wavelet_index(-1, Fraction(1, p), j, p))
    f = TestFunction(p, EXACT, {})
    for i in range(p - 1):
        f = f + act_on_function(power(witness, i), seed)
    return f, witness


def perturbed_generic_example(p: int = 3, j: int = 1) -> TestFunction:
    """Same construction with coefficients 1, 2, ..., p-1: the coefficient
    mismatch removes the extra symmetry."""
    r = _order_p_minus_1_unit(p)
    witness = affine(r, 0, p)
    seed = TestFunction.single(wavelet_index(-1, Fraction(1, p), j, p))
    f = TestFunction(p, EXACT, {})
    for i in range(p - 1):
        member = act_on_function(power(witness, i), seed)
        f = f + member.scaled(CycloNumber.from_rational(i + 1, p))
    return f


def base_wavelet(p: int, mode: str = EXACT) -> TestFunction:
    """The mother wavelet: scale 0, zero translation, j = 1."""
    return TestFunction.single(wavelet_index(0, 0, 1, p), mode)

"""Sparse multivariate polynomials with exact integer coefficients.

Terms are stored as ``(exponent vector, coefficient)`` pairs sorted in graded
lexicographic order (highest term first), so two equal polynomials always have
the same representation. Greatest common divisors go through SymPy after a
content split and a modular coprimality probe.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcd
from sympy.polys.polyerrors import ExactQuotientFailed

from orbitlab.errors import ArityError, DimensionMismatchError

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Term = Tuple[Exponents, int]

# Degree of the zero polynomial.
NEG_INF = float("-inf")

# Prime modulus for the coprimality probe (2**61 - 1).
PROBE_PRIME = 2305843009213693951
PROBE_SEED = 0x5EED


def _grlex_key(exps: Exponents) -> Tuple[int, Exponents]:
    return (sum(exps), exps)


@dataclass(frozen=True)
class MultiPoly:
    """Polynomial in ``nvars`` variables x0..x{nvars-1} over the integers."""

    nvars: int
    terms: Tuple[Term, ...] = ()

    # Construction

    @classmethod
    def from_dict(cls, nvars: int, coeffs: Mapping[Exponents, int]) -> "MultiPoly":
        """Build a canonical polynomial, dropping zero coefficients."""
        items = []
        for exps, c in coeffs.items():
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ArityError(
                    f"exponent vector {exps} does not have {nvars} entries"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            items.append((exps, int(c)))
        items.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
        return cls(nvars, tuple(items))

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MultiPoly":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls.from_dict(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "MultiPoly":
        return cls.from_dict(len(exps), {tuple(exps): coeff})

    # Inspection

    def as_dict(self) -> Dict[Exponents, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.terms) == 1 and sum(self.terms[0][0]) == 0)

    def degree(self) -> Union[int, float]:
        """Maximum total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return sum(self.terms[0][0])

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = sum(self.terms[0][0])
        return all(sum(exps) == d for exps, _ in self.terms)

    def leading_term(self) -> Term:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def leading_coefficient(self) -> int:
        return self.leading_term()[1] if self.terms else 0

    def term_count(self) -> int:
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exponents(self) -> Exponents:
        """Componentwise minimum exponent: the largest monomial dividing self."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*(e for e, _ in self.terms)))

    def content(self) -> int:
        """Gcd of the coefficients (nonnegative)."""
        return reduce(math.gcd, (c for _, c in self.terms), 0)

    def primitive_part(self) -> "MultiPoly":
        cont = self.content()
        if cont in (0, 1):
            return self
        return MultiPoly(self.nvars, tuple((e, c // cont) for e, c in self.terms))

    def normalized(self) -> "MultiPoly":
        """Same polynomial up to sign, with positive leading coefficient."""
        if self.terms and self.terms[0][1] < 0:
            return -self
        return self

    # Arithmetic

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatchError(
                f"polynomials in {self.nvars} and {other.nvars} variables"
            )

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __add__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other)
        self._check(other)
        acc = self.as_dict()
        for exps, c in other.terms:
            acc[exps] = acc.get(exps, 0) + c
        return MultiPoly.from_dict(self.nvars, acc)

    __radd__ = __add__

    def __sub__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        return self + (-other)

    def __rsub__(self, other: int) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, int):
            if other == 0:
                return MultiPoly.zero(self.nvars)
            return MultiPoly(self.nvars, tuple((e, c * other) for e, c in self.terms))
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = poly_mul(result, base)
            k >>= 1
            if k:
                base = poly_mul(base, base)
        return result

    # Evaluation

    def evaluate(self, values: Sequence[int]) -> int:
        """Exact value at an integer (or Fraction) point."""
        if len(values) != self.nvars:
            raise ArityError(f"expected {self.nvars} values, got {len(values)}")
        total = 0
        for exps, c in self.terms:
            term = c
            for v, e in zip(values, exps):
                if e:
                    term *= v**e
                    if term == 0:
                        break
            total += term
        return total

    def evaluate_mod(self, values: Sequence[int], modulus: int) -> int:
        if len(values) != self.nvars:
            raise ArityError(f"expected {self.nvars} values, got {len(values)}")
        total = 0
        for exps, c in self.terms:
            term = c % modulus
            for v, e in zip(values, exps):
                if e:
                    term = term * pow(v, e, modulus) % modulus
            total = (total + term) % modulus
        return total

    # SymPy bridge

    def gens(self) -> Tuple[sympy.Symbol, ...]:
        return sympy.symbols(f"x0:{self.nvars}")

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly.from_dict(self.as_dict() or {(0,) * self.nvars: 0}, self.gens(), domain=ZZ)

    @classmethod
    def from_sympy(cls, nvars: int, poly: sympy.Poly) -> "MultiPoly":
        return cls.from_dict(nvars, {m: int(c) for m, c in poly.as_dict().items()})

    # Display

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for exps, c in self.terms:
            factors = [
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if c < 0 else "+"
            pieces.append(f"{sign} {body}")
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact product of two polynomials in the same variables."""
    p._check(q)
    if p.is_zero() or q.is_zero():
        return MultiPoly.zero(p.nvars)
    acc: Dict[Exponents, int] = {}
    for e1, c1 in p.terms:
        for e2, c2 in q.terms:
            exps = tuple(a + b for a, b in zip(e1, e2))
            acc[exps] = acc.get(exps, 0) + c1 * c2
    return MultiPoly.from_dict(p.nvars, acc)


def poly_compose(p: MultiPoly, subs: Sequence[MultiPoly]) -> MultiPoly:
    """Substitute ``subs[i]`` for variable ``x_i`` of ``p``."""
    if len(subs) != p.nvars:
        raise ArityError(f"{len(subs)} substitutions for {p.nvars} variables")
    if not subs:
        return p
    target = subs[0].nvars
    if any(s.nvars != target for s in subs):
        raise ArityError("substitutions do not share a common number of variables")

    # powers[i][k] = subs[i] ** k, filled on demand
    powers: List[Dict[int, MultiPoly]] = [{0: MultiPoly.constant(target, 1)} for _ in subs]

    def power(i: int, k: int) -> MultiPoly:
        cache = powers[i]
        if k not in cache:
            half = power(i, k // 2)
            sq = poly_mul(half, half)
            cache[k] = poly_mul(sq, subs[i]) if k % 2 else sq
        return cache[k]

    acc: Dict[Exponents, int] = {}
    for exps, c in p.terms:
        term = MultiPoly.constant(target, c)
        for i, e in enumerate(exps):
            if e:
                term = poly_mul(term, power(i, e))
        for te, tc in term.terms:
            acc[te] = acc.get(te, 0) + tc
    return MultiPoly.from_dict(target, acc)


def _univariate_specialization(
    p: MultiPoly, var: int, point: Sequence[int], modulus: int
) -> List[int]:
    """Dense coefficients (high to low) of p(x_var; others := point) mod modulus."""
    coeffs: Dict[int, int] = {}
    for exps, c in p.terms:
        val = c % modulus
        for i, e in enumerate(exps):
            if i != var and e:
                val = val * pow(point[i], e, modulus) % modulus
        coeffs[exps[var]] = (coeffs.get(exps[var], 0) + val) % modulus
    top = max(coeffs) if coeffs else 0
    return [coeffs.get(k, 0) for k in range(top, -1, -1)]


def _var_degree(p: MultiPoly, var: int) -> int:
    return max((exps[var] for exps, _ in p.terms), default=0)


def coprime_probe(p: MultiPoly, q: MultiPoly, rng: Optional[np.random.Generator] = None) -> bool:
    """True only if p and q certainly have no common factor of positive degree.

    Every variable is treated in turn as the main variable; the others are
    specialized at a random point mod a large prime. When the leading
    coefficients survive, the specialized gcd can only be larger than the true
    one, so a constant specialized gcd in every variable proves coprimality.
    A False answer means "undecided".
    """
    rng = rng if rng is not None else np.random.default_rng(PROBE_SEED)
    modulus = PROBE_PRIME
    for var in range(p.nvars):
        dp, dq = _var_degree(p, var), _var_degree(q, var)
        if dp == 0 or dq == 0:
            continue
        point = [int(v) for v in rng.integers(1, modulus, size=p.nvars)]
        fp = _univariate_specialization(p, var, point, modulus)
        fq = _univariate_specialization(q, var, point, modulus)
        if len(fp) - 1 != dp or len(fq) - 1 != dq or fp[0] == 0 or fq[0] == 0:
            return False
        g = gf_gcd(fp, fq, modulus, ZZ)
        if len(g) > 1:
            return False
    return True


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor with positive leading coefficient.

    gcd(p, 0) is p normalized; the integer content gcd is part of the result.
    """
    p._check(q)
    if q.is_zero():
        return p.normalized()
    if p.is_zero():
        return q.normalized()
    cont = math.gcd(p.content(), q.content())
    pp, qq = p.primitive_part(), q.primitive_part()
    if pp.is_monomial() or qq.is_monomial():
        # gcd(x^a, q) = x^min(a, b) where x^b is the monomial content of q
        exps = tuple(min(a, b) for a, b in zip(pp.min_exponents(), qq.min_exponents()))
        return MultiPoly.monomial(exps, cont)
    if coprime_probe(pp, qq):
        return MultiPoly.constant(p.nvars, cont)
    g = pp.to_sympy().gcd(qq.to_sympy())
    result = MultiPoly.from_sympy(p.nvars, g).primitive_part().normalized()
    return result * cont


def poly_gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    """Gcd of a nonempty sequence of polynomials, stopping early at a unit."""
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty sequence")
    g = MultiPoly.zero(polys[0].nvars)
    for poly in polys:
        g = poly_gcd(g, poly)
        if g.is_constant() and not g.is_zero():
            break
    return g


def poly_exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Quotient p / q; raises ``ValueError`` when q does not divide p."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    if q.is_monomial():
        (qe, qc), = q.terms
        terms = []
        for exps, c in p.terms:
            shifted = tuple(a - b for a, b in zip(exps, qe))
            if c % qc or min(shifted) < 0:
                raise ValueError(f"{q} does not divide {p}")
            terms.append((shifted, c // qc))
        return MultiPoly.from_dict(p.nvars, dict(terms))
    try:
        quotient = p.to_sympy().exquo(q.to_sympy(), auto=False)
    except ExactQuotientFailed as e:
        raise ValueError(f"{q} does not divide {p}") from e
    return MultiPoly.from_sympy(p.nvars, quotient)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        poly_exact_divide(p, q)
    except ValueError:
        return False
    return True

"""Period differential operators and their hypergeometric reduction.

For a one-parameter family ``W_sigma = W + sigma*phi_m`` the period integral
of a basis monomial ``phi_r`` satisfies an ordinary differential equation in
``sigma`` of Gelfand--Kapranov--Zelevinsky type.  With ``delta = sigma d/dsigma``
it takes the two-sided product form

    prod_c (delta + c_L) - C sigma^l prod_c (delta + c_R)

whose root multisets are read off from the marginal data: writing
``u = E^{-T} (r + 1)`` (so ``u = q^T`` for ``r = 0``) and
``beta_{i,k} = (u_i + k) / l_i``,

    leftRoots  = {-k : 0 <= k < l}  u  {l*beta_{i,k} : l_i < 0, 0 <= k < -l_i}
    rightRoots = {l*beta_{i,k} : l_i > 0, 0 <= k < l_i}

and ``C`` is the marginal normalising constant, so that in the coordinate
``x = C sigma^l`` the series coefficients follow exact Pochhammer ratios.

Cancelling a left root ``c`` against a right root ``c + l`` splits off the
left divisor ``(delta + c)``; what remains is again an operator of the same
shape and a right factor of the original.  Repeating until no pair remains
usually leaves a second-order operator, i.e. a Gauss hypergeometric equation
with weights ``(alpha, beta; gamma)``; occasionally it terminates at first
order, where the solution is ``(1 - x)^{-deg phi_r}``.  There is no general
rule for which factors survive, so reduction is greedy and deterministic,
and every reported weight triple is certified by :func:`annihilation_check`,
which substitutes both Frobenius solutions at ``x = 0`` into the *unreduced*
operator with exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .isespoly import NVARS, CatalogEntry, InvertiblePolynomial, MarginalData, _inverse3, _mat_vec
from .numcore import DomainError, Rat

__all__ = [
    "DeltaOperator",
    "HGWeights",
    "NotSecondOrder",
    "ResonantBasis",
    "build_gkz",
    "reduce_left_divisors",
    "all_reductions",
    "to_hg_weights",
    "annihilation_check",
    "tabulated_weights",
    "weight_report",
]


class NotSecondOrder(DomainError):
    """The reduced operator is not of order two (and not first order)."""


class ResonantBasis(DomainError):
    """The two local exponents at x = 0 differ by an integer."""


@dataclass(frozen=True)
class DeltaOperator:
    """``prod(delta + c_L) - C sigma^l prod(delta + c_R)`` with exact roots."""

    left_roots: tuple[Rat, ...]
    right_roots: tuple[Rat, ...]
    step: int
    constant: Rat

    def __post_init__(self) -> None:
        object.__setattr__(self, "left_roots", tuple(sorted(Fraction(c) for c in self.left_roots)))
        object.__setattr__(self, "right_roots", tuple(sorted(Fraction(c) for c in self.right_roots)))
        if len(self.left_roots) != len(self.right_roots):
            raise DomainError("operator must have equally many left and right roots")

    @property
    def order(self) -> int:
        return len(self.left_roots)

    def cancellable_pairs(self) -> tuple[Rat, ...]:
        """Left roots c whose partner c + l appears among the right roots."""
        return tuple(c for c in self.left_roots if c + self.step in self.right_roots)

    def cancel(self, c: Rat) -> "DeltaOperator":
        """Split off the left divisor ``(delta + c)``; needs ``c + l`` on the right."""
        if c not in self.left_roots or c + self.step not in self.right_roots:
            raise DomainError(f"no cancellable pair at {c}")
        left = list(self.left_roots)
        left.remove(c)
        right = list(self.right_roots)
        right.remove(c + self.step)
        return DeltaOperator(tuple(left), tuple(right), self.step, self.constant)

    def to_text(self) -> str:
        def factor(c: Rat) -> str:
            if c == 0:
                return "(d)"
            return f"(d{'+' if c > 0 else '-'}{abs(c)})"

        lhs = " ".join(factor(c) for c in self.left_roots)
        rhs = " ".join(factor(c) for c in self.right_roots)
        return f"{lhs} - ({self.constant}) s^{self.step} {rhs}"


@dataclass(frozen=True)
class HGWeights:
    """Hypergeometric data for a period: ``x^s * 2F1(alpha, beta; gamma; x)``.

    When ``first_order`` is set the period solves a first-order equation and
    equals ``x^s (1 - x)^{-alpha}``; ``beta`` and ``gamma`` are then None.
    """

    alpha: Rat
    beta: Rat | None
    gamma: Rat | None
    prefactor: Rat = Fraction(0)
    first_order: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.beta is not None:
            object.__setattr__(self, "beta", Fraction(self.beta))
        if self.gamma is not None:
            object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "prefactor", Fraction(self.prefactor))
        if self.first_order:
            if self.beta is not None or self.gamma is not None:
                raise DomainError("first-order data carries a single exponent")
        else:
            if self.beta is None or self.gamma is None:
                raise DomainError("second-order data needs beta and gamma")

    @classmethod
    def of_first_order(cls, deg_phi: Rat, prefactor: Rat = Fraction(0)) -> "HGWeights":
        return cls(Fraction(deg_phi), None, None, Fraction(prefactor), True)

    @property
    def triple(self) -> tuple[Rat, Rat, Rat]:
        if self.first_order:
            raise DomainError("first-order data has no weight triple")
        return (self.alpha, self.beta, self.gamma)


def _transpose_inverse(poly: InvertiblePolynomial) -> tuple[tuple[Rat, ...], ...]:
    transposed = [[poly.exponents[j][i] for j in range(NVARS)] for i in range(NVARS)]
    return _inverse3(transposed)


def build_gkz(
    entry: CatalogEntry | InvertiblePolynomial,
    m: Sequence[int] | MarginalData,
    r: Sequence[int] = (0, 0, 0),
) -> DeltaOperator:
    """The (unreduced) period operator for ``phi_r`` in the family ``W + sigma phi_m``."""
    if isinstance(entry, CatalogEntry):
        poly = entry.polynomial
        marginal = entry.marginal(m) if not isinstance(m, MarginalData) else m
    else:
        poly = entry
        marginal = m if isinstance(m, MarginalData) else MarginalData.derive(poly, m)
    inv_t = _transpose_inverse(poly)
    shifted = tuple(Fraction(int(ri) + 1) for ri in r)
    u = _mat_vec(inv_t, shifted)
    l = marginal.l
    lvec = marginal.l_vector
    left: list[Rat] = [Fraction(-k) for k in range(l)]
    right: list[Rat] = []
    for i in range(NVARS):
        li = lvec[i]
        if li > 0:
            right.extend(Fraction(l) * (u[i] + k) / li for k in range(li))
        elif li < 0:
            left.extend(Fraction(l) * (u[i] + k) / li for k in range(-li))
    return DeltaOperator(tuple(left), tuple(right), l, marginal.C)


def reduce_left_divisors(op: DeltaOperator) -> DeltaOperator:
    """Greedily remove all pairs (c, c + l): smallest left root first."""
    while True:
        pairs = op.cancellable_pairs()
        if not pairs:
            return op
        op = op.cancel(min(pairs))


def all_reductions(op: DeltaOperator) -> set[tuple[tuple[Rat, ...], tuple[Rat, ...]]]:
    """Final (left, right) multisets over every greedy cancellation order."""
    results: set[tuple[tuple[Rat, ...], tuple[Rat, ...]]] = set()
    stack = [op]
    while stack:
        cur = stack.pop()
        pairs = set(cur.cancellable_pairs())
        if not pairs:
            results.add((cur.left_roots, cur.right_roots))
            continue
        stack.extend(cur.cancel(c) for c in pairs)
    return results


def to_hg_weights(op: DeltaOperator, deg_phi: Rat) -> HGWeights:
    """Read hypergeometric weights off a (reduced) operator.

    The substitution ``x = C sigma^l`` turns ``delta`` into ``l * theta`` with
    ``theta = x d/dx``; conjugating by ``x^s`` shifts every root by ``l*s`` so
    that a left root sits at 0.  The remaining left root gives
    ``gamma = 1 + c_L / l`` and the right roots give ``alpha, beta = c_R / l``.
    """
    deg_phi = Fraction(deg_phi)
    l = op.step
    if Fraction(0) in op.left_roots:
        s = Fraction(0)
    else:
        s = -max(op.left_roots) / l
    left = sorted(c + l * s for c in op.left_roots)
    right = sorted(c + l * s for c in op.right_roots)
    if op.order == 1:
        weights = HGWeights.of_first_order(right[0] / l, s)
        if weights.alpha - s != deg_phi:
            raise DomainError(
                f"first-order exponent {weights.alpha} does not match deg phi_r = {deg_phi}"
            )
        return weights
    if op.order != 2:
        raise NotSecondOrder(f"operator has order {op.order}")
    alpha, beta = (right[0] / l, right[1] / l)
    other = left[0] if left[1] == 0 else left[1]
    gamma = 1 + other / l
    weights = HGWeights(alpha, beta, gamma, s)
    if alpha + beta - gamma - s != deg_phi:
        raise DomainError(
            f"weights {weights.triple} violate alpha+beta-gamma = deg phi_r = {deg_phi}"
        )
    return weights


def _series_ratios(w: HGWeights) -> list[tuple[Rat, "_CoeffStream"]]:
    """The local solutions at x = 0 as (exponent, coefficient stream) pairs."""
    if w.first_order:
        return [(w.prefactor, _CoeffStream(w.alpha, None, None))]
    exp2 = w.prefactor + 1 - w.gamma
    if (w.prefactor - exp2).denominator == 1:
        raise ResonantBasis(f"exponents {w.prefactor} and {exp2} differ by an integer")
    return [
        (w.prefactor, _CoeffStream(w.alpha, w.beta, w.gamma)),
        (exp2, _CoeffStream(w.alpha - w.gamma + 1, w.beta - w.gamma + 1, 2 - w.gamma)),
    ]


class _CoeffStream:
    """Exact coefficients of 2F1(a, b; c; x) (or of (1-x)^{-a} when b is None)."""

    def __init__(self, a: Rat, b: Rat | None, c: Rat | None):
        self.a, self.b, self.c = a, b, c

    def coeffs(self, order: int) -> list[Rat]:
        out = [Fraction(1)]
        for k in range(order):
            if self.b is None:
                ratio = (self.a + k) / (1 + k)
            else:
                den = (self.c + k) * (1 + k)
                if den == 0:
                    raise ResonantBasis(f"lower parameter {self.c} hits a nonpositive integer")
                ratio = (self.a + k) * (self.b + k) / den
            out.append(out[-1] * ratio)
        return out


def annihilation_check(op: DeltaOperator, w: HGWeights, order: int = 30) -> bool:
    """Does the full operator kill every local solution built from ``w``?

    Acting on ``x^{e+k}`` the operator contributes
    ``prod(l(e+k) + c_L)`` at the same power and, because
    ``C sigma^l = x``, ``-prod(l(e+k) + c_R)`` one power higher; the image
    vanishes iff ``f_k prod(l(e+k)+c_L) = f_{k-1} prod(l(e+k-1)+c_R)`` for all
    k.  Checked exactly through ``x^{e+order}`` for each solution.
    """
    l = op.step
    for exponent, stream in _series_ratios(w):
        f = stream.coeffs(order)
        for k in range(order + 1):
            th = l * (exponent + k)
            lhs = f[k]
            for c in op.left_roots:
                lhs *= th + c
            rhs = Fraction(0)
            if k > 0:
                rhs = f[k - 1]
                for c in op.right_roots:
                    rhs *= l * (exponent + k - 1) + c
            if lhs != rhs:
                return False
    return True


def tabulated_weights(entry: CatalogEntry, m: Sequence[int], r: Sequence[int]) -> HGWeights | None:
    """Catalogued weight triple for (entry, m, r), if one is frozen.

    Marginal rows (``r = 0``) are tabulated per deformation direction; twisted
    rows are tabulated only for the family marginal (the first one listed).
    """
    r = tuple(int(v) for v in r)
    if r == (0, 0, 0):
        row = entry.marginal(m)
        if row.weights is not None:
            return HGWeights(*row.weights)
        return None
    if tuple(int(v) for v in m) == entry.marginals[0].m:
        for key, tw in entry.twisted:
            if key == r:
                return HGWeights(*tw)
    return None


def weight_report(
    entry: CatalogEntry,
    m: Sequence[int],
    r: Sequence[int] = (0, 0, 0),
    order: int = 30,
) -> tuple[HGWeights, bool]:
    """Reduce the operator for (entry, m, r) and certify the resulting weights.

    Frozen catalog weights are authoritative whenever present and certified;
    a greedy reduction that disagrees is discarded in their favour (the
    reduction order is a heuristic, the annihilation oracle is not).
    """
    op = build_gkz(entry, m, r)
    poly = entry.polynomial
    deg_phi = sum(Fraction(int(v)) * q for v, q in zip(r, poly.charges))
    tab = tabulated_weights(entry, m, r)
    reduced = reduce_left_divisors(op)
    try:
        greedy: HGWeights | None = to_hg_weights(reduced, deg_phi)
    except NotSecondOrder:
        greedy = None
    chosen = tab if tab is not None else greedy
    if chosen is None:
        raise NotSecondOrder(
            f"no tabulated weights and greedy reduction left order {reduced.order}"
        )
    verified = annihilation_check(op, chosen, order)
    if tab is not None and not verified and greedy is not None:
        chosen = greedy
        verified = annihilation_check(op, chosen, order)
    return chosen, verified

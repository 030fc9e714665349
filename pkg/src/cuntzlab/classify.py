"""Invariants of states on O_n: cdim, kappa with certificates, purity, equivalence.

For a state omega with GNS triple (H, pi, Omega), the conjugate-cyclic
subspace is K = span{pi(s_J)* Omega}; ``cdim`` is its dimension, computed
from Gram matrices of moments through the identity

    <pi(s_J)* Omega, pi(s_K)* Omega> = omega(s_J s_K*).

``kappa`` is the minimum of cdim over all states whose GNS representations
are unitarily equivalent to omega's.  It is never guessed: a value is
reported only together with a certificate --

* ``Minimal(u)``: an isometry u in the creation span with omega(u) = 1
  forces K to be minimal, so kappa = cdim;
* ``ProperlyInfinite(a, cutoff)``: a sequence of isometries whose prefix
  products satisfy omega(a_1..a_l a_k*..a_1*) = delta_lk makes the class
  properly infinite, so kappa is infinite;
* ``ShiftPeriod(d)``: vector states of the shift representation of an
  eventually periodic word have kappa = d, the primitive period length;
* ``EquivalentToCuntz(z)``: equivalence to a Cuntz state gives kappa = 1;
* ``LowerBoundOnly``: everything else -- kappa stays an interval.

Equivalence and purity are decided family-pair-wise with reasons naming the
deciding rule; pairs outside the classified catalog come back ``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf, lcm
from typing import ClassVar, NamedTuple

from .errors import AlphabetMismatch, NotInCatalog, NotUnit, SchemaError, ValidationFailed
from .linalg import hermitian_transpose, mat_vec, solve
from .moments import IsometrySequence, MomentFunctional, hat_parameter_inverse
from .scalars import (
    DEFAULT_RANK_TOL,
    abs2,
    conj,
    is_exact_scalar,
    scalar_is_zero,
    scalars_close,
)
from .shiftrep import GridRepresentation, ShiftRepresentation, vector_state
from .symalg import CuntzElement, adjoint, gauge_apply, identity, is_isometry_in_plus, multiply
from .words import EventuallyPeriodicWord, Word, all_words, tail_equivalent

__all__ = [
    "CdimResult",
    "Minimal",
    "ProperlyInfinite",
    "ShiftPeriod",
    "EquivalentToCuntz",
    "LowerBoundOnly",
    "Certificate",
    "KappaResult",
    "PropInfCheck",
    "EquivDecision",
    "PurityDecision",
    "EndoInvariants",
    "cdim",
    "kappa",
    "pure",
    "equivalent",
    "verify_minimality_certificate",
    "verify_properly_infinite",
    "kappa_rep",
    "endo_invariants",
    "decompose_spectrum_bucket",
]


def _real(x):
    """Real part: Fraction for exact scalars, float otherwise."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if is_exact_scalar(x):  # QQi
        return x.re
    return complex(x).real


# ---------------------------------------------------------------------------
# cdim: pivoted levelwise growth of the Gram matrix of {pi(s_J)* Omega}
# ---------------------------------------------------------------------------


@dataclass
class GramGrowth:
    """Pivot basis of the conjugate-cyclic subspace, grown level by level.

    ``pivots`` are words J whose vectors pi(s_J)* Omega form a basis of the
    span reached so far; ``gram`` is their (positive definite) Gram matrix;
    ``level_ranks[L]`` is the rank over all words of length <= L.
    """

    pivots: list
    gram: list
    level_ranks: list
    stabilized: bool
    last_level: int


def _residual2(omega: MomentFunctional, gram, pivots, cand: Word):
    """Squared distance of pi(s_cand)* Omega from the span of the pivots."""
    r = [omega.moment(p, cand) for p in pivots]
    coords = solve(gram, r)
    proj = sum((conj(x) * v for x, v in zip(coords, r)), 0)
    diag = _real(omega.moment(cand, cand))
    res2 = diag - _real(proj)
    if not isinstance(res2, Fraction):
        res2 = max(res2, 0.0)
    return res2, diag


def gram_growth(omega: MomentFunctional, L_max: int = 8, tol: float | None = None) -> GramGrowth:
    """Grow a pivot basis of span{pi(s_J)* Omega : |J| <= L} for L = 0..L_max.

    Only one-letter extensions of current pivots can add new directions
    (pi(s_i)* maps the level-L span into the level-(L+1) span), so each level
    scores the children of the previous level's pivots by their squared
    residual and admits them greedily, largest residual first with a
    lexicographic tie-break.  A level that admits nothing stabilizes the
    subspace for good.
    """
    if L_max < 1:
        raise SchemaError(f"the level cap must be at least 1, got {L_max}")
    rank_tol = DEFAULT_RANK_TOL if tol is None else tol
    pivots: list[Word] = [()]
    gram = [[omega.moment((), ())]]
    level_ranks = [1]
    frontier: list[Word] = [()]
    stabilized = False
    level = 0
    for level in range(1, L_max + 1):
        cands = [p + (i,) for p in frontier for i in range(1, omega.n + 1)]
        added: list[Word] = []
        while cands:
            scored = []
            for c in cands:
                res2, diag = _residual2(omega, gram, pivots, c)
                if isinstance(res2, Fraction):
                    ok = res2 > 0
                else:
                    ok = res2 > rank_tol * max(1.0, diag)
                if ok:
                    scored.append((res2, tuple(-a for a in c), c))
            if not scored:
                break
            scored.sort()
            best = scored[-1][2]
            for i, p in enumerate(pivots):
                gram[i].append(omega.moment(p, best))
            gram.append([omega.moment(best, p) for p in pivots] + [omega.moment(best, best)])
            pivots.append(best)
            added.append(best)
            cands.remove(best)
        level_ranks.append(len(pivots))
        if not added:
            stabilized = True
            break
        frontier = added
    return GramGrowth(pivots, gram, level_ranks, stabilized, level)


@dataclass(frozen=True)
class CdimResult:
    """Rank of the conjugate-cyclic subspace with its stabilization status.

    ``status`` is "stabilized" when two consecutive levels agree (then the
    value is exact) and "lower_bound" when the level cap was hit first.
    ``level_ranks[L]`` is the rank over words of length <= L, including the
    repeated final level on stabilization.
    """

    value: int
    status: str
    level_ranks: tuple
    pivot_words: tuple = ()


def cdim(omega: MomentFunctional, L_max: int = 8, tol: float | None = None) -> CdimResult:
    """Dimension of K = span{pi(s_J)* Omega}, grown level by level."""
    g = gram_growth(omega, L_max, tol)
    status = "stabilized" if g.stabilized else "lower_bound"
    return CdimResult(len(g.pivots), status, tuple(g.level_ranks), tuple(g.pivots))


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Minimal:
    """Isometry u in the creation span with omega(u) = 1: kappa = cdim."""

    u: CuntzElement
    kind: ClassVar[str] = "minimal"


@dataclass(frozen=True)
class ProperlyInfinite:
    """Isometry sequence with delta-table omega(a_1..a_l a_k*..a_1*) = delta_lk.

    ``status`` is "proved" when the table holds at every order by the family's
    structure, "evidence" when it was only checked up to ``cutoff``.
    """

    a: IsometrySequence | None
    cutoff: int | None = None
    status: str = "proved"
    kind: ClassVar[str] = "properly_infinite"


@dataclass(frozen=True)
class ShiftPeriod:
    """kappa = d for vector states of the shift of an eventually periodic word."""

    d: int
    kind: ClassVar[str] = "shift_period"


@dataclass(frozen=True)
class EquivalentToCuntz:
    """The state is equivalent to the Cuntz state by z, so kappa = 1."""

    z: tuple
    provenance: str = "family"
    kind: ClassVar[str] = "equivalent_to_cuntz"


@dataclass(frozen=True)
class LowerBoundOnly:
    """No certificate applies; the value is only bracketed, never guessed."""

    low: int
    high: object = inf
    level: int | None = None
    note: str = ""
    kind: ClassVar[str] = "lower_bound_only"


Certificate = Minimal | ProperlyInfinite | ShiftPeriod | EquivalentToCuntz | LowerBoundOnly


class KappaResult(NamedTuple):
    value: object  # int | math.inf | None (unresolved)
    certificate: Certificate


# ---------------------------------------------------------------------------
# Certificate verification
# ---------------------------------------------------------------------------


def verify_minimality_certificate(omega: MomentFunctional, u: CuntzElement, tol: float | None = None) -> bool:
    """True when u is an isometry in the creation span with omega(u) = 1.

    Such a u fixes the cyclic vector (pi(u) Omega = Omega by the equality case
    of Cauchy-Schwarz), which makes the conjugate-cyclic subspace minimal over
    the equivalence class: kappa = cdim.
    """
    if u.n != omega.n:
        raise SchemaError(f"certificate over n={u.n}, state over n={omega.n}")
    isometry, in_plus = is_isometry_in_plus(u, tol)
    if not (isometry and in_plus):
        return False
    return scalars_close(omega.moment_of_element(u), 1, tol)


@dataclass(frozen=True)
class PropInfCheck:
    """Outcome of a delta-table check.

    ``status``: "proved" when the checked sequence is the state's own and the
    family supplies the all-orders argument; "evidence" when the finite table
    holds but nothing beyond the cutoff is known; "failed" otherwise.  The
    boolean value of the result is True only for "proved".
    """

    ok: bool
    status: str
    table: tuple
    cutoff: int

    def __bool__(self) -> bool:
        return self.ok


def verify_properly_infinite(
    omega: MomentFunctional,
    a=None,
    cutoff: int = 12,
    tol: float | None = None,
) -> PropInfCheck:
    """Check omega(a_1..a_l a_k*..a_1*) = delta_lk for l, k <= cutoff.

    ``a`` may be an isometry sequence attached by a family constructor, a
    callable i -> a_i, or a plain sequence; omitted, the state's own attached
    sequence is used.  Each a_i must be an isometry in the creation span.
    The cost grows with the number of terms of the prefix products, so dense
    multi-term sequences want a modest cutoff.
    """
    seq = a if a is not None else omega.properly_infinite
    if seq is None:
        raise SchemaError("no isometry sequence supplied and the state carries none")
    if isinstance(seq, IsometrySequence):
        factory = seq.factory
    elif callable(seq):
        factory = seq
    else:
        elems = list(seq)
        if len(elems) < cutoff:
            raise SchemaError(f"need {cutoff} sequence elements, got {len(elems)}")
        factory = lambda i: elems[i - 1]

    prods = [identity(omega.n)]
    for i in range(1, cutoff + 1):
        ai = factory(i)
        isometry, in_plus = is_isometry_in_plus(ai, tol)
        if not (isometry and in_plus):
            raise NotUnit(f"sequence element {i} is not an isometry in the creation span")
        prods.append(multiply(prods[-1], ai))
    adjoints = [adjoint(p) for p in prods]

    table = []
    delta_ok = True
    for l in range(1, cutoff + 1):
        row = []
        for k in range(1, cutoff + 1):
            val = omega.moment_of_element(multiply(prods[l], adjoints[k]))
            row.append(val)
            if not scalars_close(val, 1 if l == k else 0, tol):
                delta_ok = False
        table.append(tuple(row))

    flagged = omega.properly_infinite
    analytic = (
        delta_ok
        and flagged is not None
        and flagged.status == "proved"
        and (a is None or a is flagged)
    )
    if analytic:
        status = "proved"
    elif delta_ok:
        status = "evidence"
    else:
        status = "failed"
    return PropInfCheck(analytic, status, tuple(table), cutoff)


# ---------------------------------------------------------------------------
# kappa
# ---------------------------------------------------------------------------


def _transport_certificate(cert: Certificate, g) -> Certificate:
    """Carry a certificate of omega over to omega o alpha_g.

    alpha_g is inverted by alpha of the conjugate transpose, so isometry data
    transports by substitution and Cuntz parameters by the adjoint matrix.
    """
    gH = hermitian_transpose(g)
    if isinstance(cert, Minimal):
        return Minimal(gauge_apply(gH, cert.u))
    if isinstance(cert, ProperlyInfinite) and cert.a is not None:
        seq = cert.a
        moved = IsometrySequence(
            lambda i: gauge_apply(gH, seq.factory(i)),
            seq.status,
            seq.description + " (composed with the inverse gauge twist)",
        )
        return ProperlyInfinite(moved, cert.cutoff, cert.status)
    if isinstance(cert, EquivalentToCuntz):
        return EquivalentToCuntz(tuple(mat_vec(gH, list(cert.z))), cert.provenance)
    return cert


def _search_minimal_isometry(omega: MomentFunctional, depth: int, tol: float | None):
    """Bounded search for a prefix code P with sum_{W in P} |omega(s_W)|^2 = 1.

    Saturation of the Bessel inequality on a prefix code P means Omega lies in
    the span of {pi(s_W) Omega : W in P}, and u = sum conj(omega(s_W)) s_W is
    then an isometry with omega(u) = 1.  Candidates: the uniform codes of each
    order m <= depth and, for every letter, the codes {a^r i : i != a, r < k}
    + {a^k} for k <= depth.
    """
    n = omega.n
    codes = [list(all_words(n, m)) for m in range(1, depth + 1)]
    for axis in range(1, n + 1):
        for k in range(2, depth + 1):
            code = [(axis,) * r + (i,) for r in range(k) for i in range(1, n + 1) if i != axis]
            code.append((axis,) * k)
            codes.append(code)
    for code in codes:
        vals = {W: omega.moment(W, ()) for W in code}
        total = sum((abs2(v) for v in vals.values()), 0)
        if not scalars_close(total, 1, tol):
            continue
        terms = {(W, ()): conj(v) for W, v in vals.items() if not scalar_is_zero(v, tol)}
        u = CuntzElement(n, terms)
        if verify_minimality_certificate(omega, u, tol):
            return u
    return None


def kappa(
    omega: MomentFunctional,
    L_max: int = 8,
    tol: float | None = None,
    *,
    search_certificates: bool = False,
    search_depth: int = 3,
) -> KappaResult:
    """Minimum of cdim over the unitary-equivalence class, with a certificate.

    Dispatch, most specific first: gauge twists delegate to their base (the
    invariant is unchanged; certificates transport through the inverse
    twist); shift-family states report the primitive period; an attached or
    derived Cuntz equivalence gives 1; a proved delta-table gives infinity;
    a verified minimality certificate pins kappa = cdim once the rank
    stabilizes.  Anything else returns ``None`` with a ``LowerBoundOnly``
    interval [low, high] -- never a guess.  With ``search_certificates`` a
    bounded prefix-code search (depth ``search_depth``) tries to find a
    minimality certificate first; its failure is reported in the note.
    """
    if omega.family == "gauge" and omega.base is not None:
        inner = kappa(
            omega.base, L_max, tol,
            search_certificates=search_certificates, search_depth=search_depth,
        )
        return KappaResult(inner.value, _transport_certificate(inner.certificate, omega.params["g"]))

    if omega.family == "shift":
        d = len(omega.params["period"])
        return KappaResult(d, ShiftPeriod(d))
    if omega.family == "shift_vector":
        d = omega.params["rep_word"].period_length
        return KappaResult(d, ShiftPeriod(d))
    if omega.family == "shift_lazy" and omega.properly_infinite is not None:
        return KappaResult(
            inf,
            ProperlyInfinite(omega.properly_infinite, cutoff=omega.evidence_horizon, status="evidence"),
        )

    if omega.equivalent_to_cuntz is not None:
        prov = omega.equivalence_provenance or "user"
        return KappaResult(1, EquivalentToCuntz(tuple(omega.equivalent_to_cuntz), prov))
    if omega.family == "geometric_progression":
        y = hat_parameter_inverse(
            omega.params["z_indexed"], omega.params["steps"], omega.n, tol=tol
        )
        if y is not None:
            return KappaResult(1, EquivalentToCuntz(tuple(y), "family"))

    if omega.properly_infinite is not None and omega.properly_infinite.status == "proved":
        return KappaResult(inf, ProperlyInfinite(omega.properly_infinite, cutoff=None, status="proved"))

    searched = False
    u = omega.minimal_isometry
    if u is None and search_certificates:
        searched = True
        u = _search_minimal_isometry(omega, search_depth, tol)
    if u is not None and verify_minimality_certificate(omega, u, tol):
        g = gram_growth(omega, L_max, tol)
        if g.stabilized:
            return KappaResult(len(g.pivots), Minimal(u))
        return KappaResult(
            None,
            LowerBoundOnly(
                len(g.pivots), inf, level=g.last_level,
                note="a minimality certificate verified, so kappa equals cdim, "
                     "but the rank did not stabilize below the level cap",
            ),
        )

    if omega.properly_infinite is not None:
        horizon = omega.evidence_horizon or 12
        return KappaResult(
            inf,
            ProperlyInfinite(omega.properly_infinite, cutoff=horizon, status="evidence"),
        )

    g = gram_growth(omega, L_max, tol)
    high = len(g.pivots) if g.stabilized else inf
    note = "no certificate applies to this presentation"
    if searched:
        note += f"; a prefix-code search up to depth {search_depth} found no certificate"
    return KappaResult(None, LowerBoundOnly(1, high, level=g.last_level, note=note))


# ---------------------------------------------------------------------------
# Purity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PurityDecision:
    """Verdict "Pure" | "NotPure" | "Unknown" with the deciding rule."""

    verdict: str
    reason: str


_PURE_VECTOR_REASONS = {
    "cuntz": "a Cuntz state is a vector state of an irreducible representation",
    "shift": "vector state of an irreducible shift representation",
    "shift_vector": "vector state of an irreducible shift representation",
    "shift_lazy": "vector state of an irreducible shift representation",
    "grid": "vector state of the irreducible grid representation",
    "grid_vector": "vector state of the irreducible grid representation",
    "sandwich": "unit vector state in the irreducible representation of a pure state",
    "sandwich_series": "unit vector state in the irreducible representation of a pure state",
}


def pure(omega: MomentFunctional, tol: float | None = None) -> PurityDecision:
    """Decide purity family-wise; outside the decided families return Unknown."""
    if omega.family == "gauge" and omega.base is not None:
        inner = pure(omega.base, tol)
        if inner.verdict == "Unknown":
            return inner
        return PurityDecision(
            inner.verdict,
            inner.reason + "; composition with a gauge automorphism preserves purity",
        )
    if omega.pure_hint is True:
        return PurityDecision(
            "Pure",
            _PURE_VECTOR_REASONS.get(omega.family, "vector state of an irreducible representation"),
        )
    if omega.pure_hint is False:
        return PurityDecision("NotPure", "constructed as an explicit convex mixture")

    if omega.family == "sub_cuntz":
        if omega.solution_dim == 1:
            return PurityDecision(
                "Pure",
                "the word moments pin the state uniquely (the defining tensor is not a "
                "proper tensor power), and the unique solution is pure",
            )
        p = omega.solution_dim
        return PurityDecision(
            "NotPure",
            f"the defining tensor is a {p}-th tensor power, so the canonical table is "
            f"the uniform mixture of {p} phase-twisted pure states",
        )
    if omega.family == "geometric_progression":
        if omega.solution_dim == 1:
            return PurityDecision(
                "Pure",
                "the closing coefficient has modulus < 1, so the state is unique and pure",
            )
        return PurityDecision(
            "Unknown",
            "the defining system is underdetermined on this code and no purity criterion applies",
        )
    if omega.family == "induced_product":
        return PurityDecision(
            "NotPure",
            "the inducing sequence is eventually periodic: a shift by one full cycle "
            "aligns it with itself, the overlap series converges, and the state decomposes",
        )
    return PurityDecision("Unknown", "no purity criterion applies to this presentation")


# ---------------------------------------------------------------------------
# Equivalence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivDecision:
    """Verdict "Equivalent" | "Inequivalent" | "Unknown" with the deciding rule."""

    verdict: str
    reason: str


def _cuntz_parameter(omega: MomentFunctional, tol: float | None):
    """(z, provenance) when the state is known equivalent to the Cuntz state by z."""
    if omega.equivalent_to_cuntz is not None:
        return tuple(omega.equivalent_to_cuntz), (omega.equivalence_provenance or "user")
    if omega.family == "geometric_progression":
        y = hat_parameter_inverse(
            omega.params["z_indexed"], omega.params["steps"], omega.n, tol=tol
        )
        if y is not None:
            return tuple(y), "family"
    if omega.family == "shift" and len(omega.params["period"]) == 1:
        i = omega.params["period"][0]
        return tuple(1 if j == i else 0 for j in range(1, omega.n + 1)), "family"
    if omega.family == "gauge" and omega.base is not None:
        inner = _cuntz_parameter(omega.base, tol)
        if inner is not None:
            z, prov = inner
            return tuple(mat_vec(hermitian_transpose(omega.params["g"]), list(z))), prov
    return None


def _shift_class(omega: MomentFunctional, tol: float | None):
    """The tail class (an eventually periodic word) of states living inside a
    shift representation, when the presentation exposes one."""
    if omega.family == "shift":
        return omega.params["word"]
    if omega.family == "shift_vector":
        return omega.params["rep_word"]
    if omega.family == "cuntz":
        z = omega.params["z"]
        support = [j for j, c in enumerate(z, start=1) if not scalar_is_zero(c, tol)]
        if len(support) == 1 and scalars_close(z[support[0] - 1], 1, tol):
            return EventuallyPeriodicWord((), (support[0],), omega.n)
        return None
    if omega.family in ("sub_cuntz", "geometric_progression", "prefix_code") and omega.solution_dim == 1:
        pairs = [
            (w, c)
            for w, c in zip(omega.params["code"], omega.params["z"])
            if not scalar_is_zero(c, tol)
        ]
        if len(pairs) == 1 and scalars_close(pairs[0][1], 1, tol):
            return EventuallyPeriodicWord((), pairs[0][0], omega.n)
    return None


def _tensor_data(omega: MomentFunctional):
    """(order m, coefficient map on words of length m, solution_dim) for states
    prescribed on every word of a fixed length."""
    if omega.family == "cuntz":
        z = omega.params["z"]
        return 1, {(j,): z[j - 1] for j in range(1, omega.n + 1)}, 1
    if omega.family == "sub_cuntz":
        return (
            omega.params["order"],
            dict(zip(omega.params["code"], omega.params["z"])),
            omega.solution_dim,
        )
    return None


def _tensor_conjugate(m: int, za: dict, zb: dict, n: int, tol: float | None):
    """Decide whether zb = za, or zb is the swap x2 (x) x1 of some splitting
    za = x1 (x) x2.  Returns (conjugate, split position or 0 for equality).

    The swap is compared through pivot cross-products, which stay in exact
    arithmetic and absorb the reciprocal-scalar freedom of the factors.
    """
    words_m = list(all_words(n, m))
    if all(scalars_close(za[w], zb[w], tol) for w in words_m):
        return True, 0
    for t in range(1, m):
        rows = list(all_words(n, t))
        cols = list(all_words(n, m - t))
        pr, pc = max(
            ((R, C) for R in rows for C in cols),
            key=lambda rc: abs(complex(za[rc[0] + rc[1]])),
        )
        piv = za[pr + pc]
        if scalar_is_zero(piv, tol):
            continue
        rank_one = all(
            scalars_close(za[R + C] * piv, za[R + pc] * za[pr + C], tol)
            for R in rows
            for C in cols
        )
        if not rank_one:
            continue
        # zb should be the swapped product: zb[C + R] * piv == za[pr + C] * za[R + pc]
        if all(
            scalars_close(zb[C + R] * piv, za[pr + C] * za[R + pc], tol)
            for R in rows
            for C in cols
        ):
            return True, t
    return False, None


def _induced_blocks(omega: MomentFunctional):
    return omega.params["pre"], omega.params["rep"]


def _block_at(pre, rep, t: int):
    if t <= len(pre):
        return pre[t - 1]
    return rep[(t - len(pre) - 1) % len(rep)]


def _blocks_parallel(a, b, tol: float | None) -> bool:
    inner = sum((conj(x) * y for x, y in zip(a, b)), 0)
    return scalars_close(abs2(inner), 1, tol)


def _tails_parallel(first, second, k: int, tol: float | None) -> bool:
    """Whether first^(l) is parallel to second^(l+k) for all large l.

    Both sequences are eventually periodic in l, so it is enough to test one
    joint period beyond both preperiods.
    """
    pre_a, rep_a = first
    pre_b, rep_b = second
    period = lcm(len(rep_a), len(rep_b))
    start = max(len(pre_a), len(pre_b) - k) + 1
    return all(
        _blocks_parallel(_block_at(pre_a, rep_a, l), _block_at(pre_b, rep_b, l + k), tol)
        for l in range(start, start + period)
    )


def _induced_series_shift(omega1: MomentFunctional, omega2: MomentFunctional, tol: float | None):
    """Smallest shift aligning the inducing sequences up to phases, or None.

    The overlap series sum_l (1 - |<z^(l), y^(l+k)>|) converges exactly when
    all but finitely many terms vanish; for eventually periodic data the shift
    only matters through finitely many alignments, scanned in both directions.
    """
    b1 = _induced_blocks(omega1)
    b2 = _induced_blocks(omega2)
    period = lcm(len(b1[1]), len(b2[1]))
    span = len(b1[0]) + len(b2[0]) + period
    for k in range(span + 1):
        if _tails_parallel(b1, b2, k, tol) or _tails_parallel(b2, b1, k, tol):
            return k
    return None


def _kappa_certified(result: KappaResult) -> bool:
    if result.value is None:
        return False
    cert = result.certificate
    if isinstance(cert, ProperlyInfinite) and cert.status != "proved":
        return False
    return True


def _format_kappa(value) -> str:
    return "infinite" if value == inf else str(value)


def equivalent(omega1: MomentFunctional, omega2: MomentFunctional, tol: float | None = None) -> EquivDecision:
    """Decide unitary equivalence of the GNS representations, family-pair-wise.

    The rules, in order: shared Cuntz parameters (two states each equivalent
    to a Cuntz state are equivalent exactly when the parameters agree);
    shared shift classes (tail equivalence of the defining words); tensor
    conjugacy of uniquely determined word-moment states; parameter equality
    for uniquely determined progression states on the same code; the exact
    overlap-series criterion for induced product states; and separation by
    the certified invariants kappa and purity.  Everything else is Unknown.
    """
    if omega1.n != omega2.n:
        raise AlphabetMismatch(f"states live on O_{omega1.n} and O_{omega2.n}")

    c1 = _cuntz_parameter(omega1, tol)
    c2 = _cuntz_parameter(omega2, tol)
    if c1 is not None and c2 is not None:
        (z1, p1), (z2, p2) = c1, c2
        trust = "" if "user" not in (p1, p2) else " (relies on a user-declared equivalence, taken on trust)"
        if all(scalars_close(a, b, tol) for a, b in zip(z1, z2)):
            return EquivDecision(
                "Equivalent",
                "both states are equivalent to the Cuntz state with the same parameter vector" + trust,
            )
        return EquivDecision(
            "Inequivalent",
            "the states are equivalent to Cuntz states with different parameter vectors, "
            "and distinct Cuntz states are inequivalent" + trust,
        )

    s1 = _shift_class(omega1, tol)
    s2 = _shift_class(omega2, tol)
    if s1 is not None and s2 is not None:
        if tail_equivalent(s1, s2):
            return EquivDecision(
                "Equivalent",
                "the defining infinite words are tail equivalent, so both states are "
                "vector states of the same irreducible shift representation",
            )
        return EquivDecision(
            "Inequivalent",
            "the defining infinite words lie in different tail classes, so the shift "
            "representations are disjoint",
        )

    t1 = _tensor_data(omega1)
    t2 = _tensor_data(omega2)
    if t1 is not None and t2 is not None:
        m1, za, d1 = t1
        m2, zb, d2 = t2
        if d1 == 1 and d2 == 1:
            if m1 != m2:
                return EquivDecision(
                    "Inequivalent",
                    "uniquely determined word-moment states of different orders are never "
                    "equivalent (conjugate tensors have equal orders)",
                )
            conjugate, split = _tensor_conjugate(m1, za, zb, omega1.n, tol)
            if conjugate and split == 0:
                return EquivDecision("Equivalent", "the defining tensors coincide")
            if conjugate:
                return EquivDecision(
                    "Equivalent",
                    f"the defining tensors are conjugate: swapping the factors split after "
                    f"{split} letter(s) carries one to the other",
                )
            return EquivDecision(
                "Inequivalent",
                "the defining tensors are not conjugate at any split, and uniquely "
                "determined word-moment states are equivalent exactly when conjugate",
            )

    if (
        omega1.family == "geometric_progression"
        and omega2.family == "geometric_progression"
        and omega1.solution_dim == 1
        and omega2.solution_dim == 1
        and omega1.params["steps"] == omega2.params["steps"]
    ):
        zi1 = omega1.params["z_indexed"]
        zi2 = omega2.params["z_indexed"]
        if all(scalars_close(a, b, tol) for a, b in zip(zi1, zi2)):
            return EquivDecision("Equivalent", "same parameter vector on the same progression code")
        return EquivDecision(
            "Inequivalent",
            "uniquely determined progression states on the same code are equivalent "
            "only when the parameter vectors coincide",
        )

    if omega1.family == "induced_product" and omega2.family == "induced_product":
        k = _induced_series_shift(omega1, omega2, tol)
        if k is not None:
            return EquivDecision(
                "Equivalent",
                f"after a shift of {k} the inducing sequences are blockwise parallel, "
                "so the overlap series converges",
            )
        return EquivDecision(
            "Inequivalent",
            "no finite shift makes the inducing sequences eventually parallel, so every "
            "overlap series diverges",
        )

    k1 = kappa(omega1, tol=tol)
    k2 = kappa(omega2, tol=tol)
    if _kappa_certified(k1) and _kappa_certified(k2) and k1.value != k2.value:
        low, high = sorted((k1.value, k2.value), key=float)
        return EquivDecision(
            "Inequivalent",
            f"the invariant kappa separates the states ({_format_kappa(low)} vs "
            f"{_format_kappa(high)}); equivalent states share kappa",
        )
    pu1 = pure(omega1, tol)
    pu2 = pure(omega2, tol)
    if "Unknown" not in (pu1.verdict, pu2.verdict) and pu1.verdict != pu2.verdict:
        return EquivDecision(
            "Inequivalent",
            "one state is pure and the other is not; purity is preserved by unitary equivalence",
        )
    return EquivDecision("Unknown", "no decision rule covers this pair of presentations")


# ---------------------------------------------------------------------------
# Representation-level wrappers
# ---------------------------------------------------------------------------


def kappa_rep(rep, L_max: int = 8, tol: float | None = None) -> KappaResult:
    """kappa of an irreducible catalog representation.

    The value is kappa of any unit vector state; independence of the choice
    is asserted by sampling three basis vectors.
    """
    if isinstance(rep, ShiftRepresentation):
        if rep.lazy:
            keys = [((), 0), ((), 1), ((), 2)]
        else:
            word = rep.word
            keys = [word, word.shift(), word.prepend((1,))]
    elif isinstance(rep, GridRepresentation):
        keys = [(1, 0), (2, 3), (rep.n + 1, -2)]
    else:
        raise NotInCatalog(f"no kappa rule for representations of type {type(rep).__name__}")
    results = [kappa(vector_state(rep, key), L_max, tol) for key in keys]
    if len({r.value for r in results}) != 1:
        raise ValidationFailed("kappa must not depend on the sampled vector")
    return results[0]


class EndoInvariants(NamedTuple):
    powers_index: int
    kappa: object


def endo_invariants(rep) -> EndoInvariants:
    """Invariants of the endomorphism x -> sum_i pi(s_i) x pi(s_i)*.

    The index equals the number of generators, and kappa is inherited from
    the representation.  Within the catalog the representations are
    irreducible, so the endomorphism is ergodic, and two such endomorphisms
    are conjugate exactly when their indices match and the representations
    agree up to a gauge twist.
    """
    result = kappa_rep(rep)
    return EndoInvariants(rep.n, result.value)


def decompose_spectrum_bucket(obj, L_max: int = 8, tol: float | None = None):
    """The kappa stratum a state or catalog representation belongs to.

    Returns an integer, ``math.inf``, or the string "unresolved" when kappa
    carries no certificate.
    """
    if isinstance(obj, MomentFunctional):
        result = kappa(obj, L_max, tol)
    else:
        result = kappa_rep(obj, L_max, tol)
    if result.value is None:
        return "unresolved"
    return result.value

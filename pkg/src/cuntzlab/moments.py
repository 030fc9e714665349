"""Moment functionals of states on O_n and their concrete families.

A state omega is represented by its moments omega(s_J s_K*), exposed through
:class:`MomentFunctional`.  Family constructors attach the structural data
(parameters, certificates) that the classification layer consumes:

* ``make_cuntz(z)``               -- omega(s_J s_K*) = conj(z_J) z_K restricted
                                     appropriately; the order-1 case.
* ``make_prefix_code_state(P,z)`` -- the state(s) fixed by the isometry
                                     u = sum_W z_W s_W over a finite prefix
                                     code P; covers uniform codes (order-m
                                     states) and progression-shaped codes.
* ``make_induced_product(...)``   -- product states induced from a sequence of
                                     unit vectors, nonzero only on balanced
                                     monomials.
* ``transform_gauge`` / ``transform_sandwich`` -- pushforwards along gauge
                                     automorphisms and isometric sandwiches.
* ``make_split_series_sandwich()``-- the series sandwich sum_l 2^-l
                                     omega(A_l* . A_l) with A_l = s_2^{l-1} s_1 s_2^l
                                     over the Cuntz state by (1,0), in closed form.

Inner products are linear in the second argument throughout, so
omega(s_J s_K*) = <pi(s_J)* Omega, pi(s_K)* Omega>.
"""

from __future__ import annotations

from fractions import Fraction
from math import sqrt
from typing import Callable, Iterable, Sequence

from .errors import EmptyWord, Inconsistent, NotPrefixFree, NotUnit, SchemaError, TailNotCertified
from .linalg import hermitian_psd_check, kernel_basis, min_norm_solution
from .scalars import (
    DEFAULT_EQ_TOL,
    QQi,
    abs2,
    conj,
    format_float,
    is_exact_scalar,
    scalar_is_zero,
    scalars_close,
)
from .symalg import CuntzElement, adjoint, check_unitary, gen, is_isometry_in_plus, monomial, multiply
from .words import EventuallyPeriodicWord, Word, all_words, check_word, is_prefix, words_upto

__all__ = [
    "IsometrySequence",
    "MomentFunctional",
    "eval_moment",
    "gram_matrix",
    "make_cuntz",
    "make_prefix_code_state",
    "make_sub_cuntz",
    "make_geometric_progression",
    "hat_parameter",
    "hat_parameter_inverse",
    "make_induced_product",
    "make_mixture",
    "transform_gauge",
    "transform_sandwich",
    "make_split_series_sandwich",
    "solve_low_moments",
    "LowMomentSolution",
    "positivity_check",
    "check_unit",
]


class IsometrySequence:
    """A sequence a_1, a_2, ... of isometries in the creation span.

    ``factory(i)`` returns a_i.  ``status`` records whether the delta table
    omega(a_1..a_l a_k*..a_1*) = delta_lk is known analytically ("proved") or
    only finitely checkable ("evidence").
    """

    __slots__ = ("factory", "status", "description")

    def __init__(self, factory: Callable[[int], CuntzElement], status: str, description: str):
        self.factory = factory
        self.status = status
        self.description = description

    def prefix_product(self, length: int) -> CuntzElement:
        """a_1 a_2 ... a_length (the empty product is the identity)."""
        out = None
        for i in range(1, length + 1):
            a = self.factory(i)
            out = a if out is None else multiply(out, a)
        if out is None:
            from .symalg import identity

            return identity(self.factory(1).n)
        return out


class MomentFunctional:
    """A state on O_n presented through its moments omega(s_J s_K*)."""

    def __init__(
        self,
        n: int,
        family: str,
        evaluator: Callable[[Word, Word], object],
        *,
        params: dict | None = None,
        exact: bool = True,
        evidence_horizon: int | None = None,
        minimal_isometry: CuntzElement | None = None,
        properly_infinite: IsometrySequence | None = None,
        equivalent_to_cuntz: tuple | None = None,
        equivalence_provenance: str | None = None,
        components: list | None = None,
        base: "MomentFunctional | None" = None,
        warnings: Iterable[str] = (),
        solution_dim: int | None = None,
        pinned_by: str | None = None,
        pure_hint: bool | None = None,
    ):
        self.n = n
        self.family = family
        self.params = dict(params or {})
        self.exact = exact
        self.evidence_horizon = evidence_horizon
        self.minimal_isometry = minimal_isometry
        self.properly_infinite = properly_infinite
        self.equivalent_to_cuntz = equivalent_to_cuntz
        self.equivalence_provenance = equivalence_provenance
        self.components = components
        self.base = base
        self.warnings = list(warnings)
        self.solution_dim = solution_dim
        self.pinned_by = pinned_by
        self.pure_hint = pure_hint
        self._evaluator = evaluator
        self._memo: dict[tuple[Word, Word], object] = {}

    def moment(self, J: Word, K: Word = ()) -> object:
        """omega(s_J s_K*)."""
        key = (check_word(J, self.n), check_word(K, self.n))
        hit = self._memo.get(key)
        if hit is None and key not in self._memo:
            hit = self._evaluator(*key)
            self._memo[key] = hit
        return hit

    def moment_of_element(self, x: CuntzElement) -> object:
        if x.n != self.n:
            raise SchemaError(f"element over n={x.n}, state over n={self.n}")
        return sum((c * self.moment(J, K) for (J, K), c in x.terms.items()), 0)

    def __repr__(self):
        return f"MomentFunctional(n={self.n}, family={self.family!r})"


def eval_moment(omega: MomentFunctional, J: Word, K: Word = ()) -> object:
    """omega(s_J s_K*); K defaults to the empty word."""
    return omega.moment(J, K)


def gram_matrix(omega: MomentFunctional, words: Sequence[Word]):
    """Gram matrix of the vectors pi(s_J)* Omega for J in words."""
    return [[omega.moment(a, b) for b in words] for a in words]


def check_unit(vec, tol: float | None = None) -> None:
    total = sum((abs2(x) for x in vec), 0)
    if is_exact_scalar(total) or isinstance(total, Fraction):
        if total != 1:
            raise NotUnit(f"parameter vector has squared norm {total}, expected 1")
    elif abs(float(total) - 1.0) > (DEFAULT_EQ_TOL if tol is None else tol):
        raise NotUnit(f"parameter vector has squared norm {float(total)!r}, expected 1")


def _word_product(z: Sequence, J: Word):
    out = 1
    for a in J:
        out = out * z[a - 1]
    return out


# ---------------------------------------------------------------------------
# Cuntz states
# ---------------------------------------------------------------------------


def make_cuntz(z, tol: float | None = None) -> MomentFunctional:
    """The state with pi(s_j)* Omega = z_j Omega, i.e. omega(s_J s_K*) = conj(z_J) z_K."""
    z = tuple(z)
    n = len(z)
    if n < 2:
        raise SchemaError("need at least two components")
    check_unit(z, tol)
    exact = all(is_exact_scalar(x) for x in z)

    def evaluator(J: Word, K: Word):
        return conj(_word_product(z, J)) * _word_product(z, K)

    u = CuntzElement(n, {((j,), ()): z[j - 1] for j in range(1, n + 1) if not scalar_is_zero(z[j - 1], 0.0)})
    return MomentFunctional(
        n,
        "cuntz",
        evaluator,
        params={"z": z},
        exact=exact,
        minimal_isometry=u,
        equivalent_to_cuntz=z,
        equivalence_provenance="family",
        pure_hint=True,
    )


# ---------------------------------------------------------------------------
# Prefix-code fixed-point states and their low-moment solver
# ---------------------------------------------------------------------------


class LowMomentSolution:
    """Solved creation moments v_C = omega(s_C) for |C| <= max code length."""

    __slots__ = ("table", "solution_dim", "pinned_by", "warnings")

    def __init__(self, table, solution_dim, pinned_by, warnings):
        self.table = table
        self.solution_dim = solution_dim
        self.pinned_by = pinned_by
        self.warnings = warnings


class _RealLinearExpr:
    """A complex-valued expression that is R-linear in the real unknowns."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def zero(cls, width: int, exact: bool):
        z = Fraction(0) if exact else 0.0
        return cls([z] * width, [z] * width)

    @classmethod
    def variable(cls, idx_re: int, idx_im: int, width: int, exact: bool):
        e = cls.zero(width, exact)
        one = Fraction(1) if exact else 1.0
        e.re[idx_re] = one
        e.im[idx_im] = one
        return e

    def plus(self, other: "_RealLinearExpr"):
        return _RealLinearExpr(
            [a + b for a, b in zip(self.re, other.re)],
            [a + b for a, b in zip(self.im, other.im)],
        )

    def minus(self, other: "_RealLinearExpr"):
        return _RealLinearExpr(
            [a - b for a, b in zip(self.re, other.re)],
            [a - b for a, b in zip(self.im, other.im)],
        )

    def conjugated(self):
        return _RealLinearExpr(list(self.re), [-b for b in self.im])

    def scaled(self, c):
        # (a+bi)(re+im i) -> re' = a re - b im, im' = a im + b re
        if is_exact_scalar(c):
            q = c if isinstance(c, QQi) else QQi(c)
            a, b = q.re, q.im
        else:
            cc = complex(c)
            a, b = cc.real, cc.imag
        return _RealLinearExpr(
            [a * r - b * i for r, i in zip(self.re, self.im)],
            [a * i + b * r for r, i in zip(self.re, self.im)],
        )


def _validate_prefix_code(P, n: int):
    words = []
    for W in P:
        w = check_word(W, n)
        if not w:
            raise EmptyWord("a prefix code may not contain the empty word")
        words.append(w)
    if len(set(words)) != len(words):
        raise NotPrefixFree("repeated word in code")
    for a in words:
        for b in words:
            if a != b and is_prefix(a, b):
                raise NotPrefixFree(f"{a} is a prefix of {b}")
    return words


def _align_coefficients(code, z, n: int) -> dict:
    if isinstance(z, dict):
        zmap = {check_word(k, n): v for k, v in z.items()}
        extra = set(zmap) - set(code)
        if extra:
            raise SchemaError(f"coefficients on words outside the code: {sorted(extra)}")
        for w in code:
            zmap.setdefault(w, 0)
    else:
        z = list(z)
        if len(z) != len(code):
            raise SchemaError(f"{len(z)} coefficients for a code of {len(code)} words")
        zmap = dict(zip(code, z))
    return zmap


def solve_low_moments(P, z, n: int | None = None, *, tol: float | None = None) -> LowMomentSolution:
    """Solve for the creation moments of the state fixed by u = sum_W z_W s_W.

    The fixed-point identity omega(u* s_C) = omega(s_C) gives one equation per
    word C with |C| <= max code length; the homogeneous real-linear system
    (with the normalization v_empty left free) has solution dimension 1
    exactly when the state is unique.  When underdetermined, sandwich
    equations omega(u* s_C u) = omega(s_C) are added; if the dimension is
    still > 1 the minimum-norm table on the slice v_empty = 1 is returned
    (the symmetric mixture) together with a warning.
    """
    if n is None:
        n = max(max(W) for W in P)
    code = _validate_prefix_code(P, n)
    zmap = _align_coefficients(code, z, n)
    check_unit([zmap[w] for w in code], tol)
    exact = all(is_exact_scalar(zmap[w]) for w in code)
    support = sorted((w for w in code if not scalar_is_zero(zmap[w], 0.0)), key=lambda w: (len(w), w))

    M = max(len(w) for w in code)
    table_words = list(words_upto(n, M))
    index = {w: i for i, w in enumerate(table_words)}
    width = 2 * len(table_words)

    def var(wd: Word) -> _RealLinearExpr:
        i = index[wd]
        return _RealLinearExpr.variable(2 * i, 2 * i + 1, width, exact)

    creation_cache: dict[Word, _RealLinearExpr] = {}

    def creation_expr(C: Word) -> _RealLinearExpr:
        if len(C) <= M:
            return var(C)
        hit = creation_cache.get(C)
        if hit is not None:
            return hit
        acc = _RealLinearExpr.zero(width, exact)
        for W in support:
            if is_prefix(W, C):
                acc = acc.plus(creation_expr(C[len(W):]).scaled(conj(zmap[W])))
        creation_cache[C] = acc
        return acc

    def r1_row(C: Word) -> _RealLinearExpr:
        rhs = _RealLinearExpr.zero(width, exact)
        for W in support:
            zw = conj(zmap[W])
            if is_prefix(W, C):
                rhs = rhs.plus(var(C[len(W):]).scaled(zw))
            elif is_prefix(C, W):
                rhs = rhs.plus(var(W[len(C):]).conjugated().scaled(zw))
        return var(C).minus(rhs)

    def sandwich_row(C: Word) -> _RealLinearExpr:
        rhs = _RealLinearExpr.zero(width, exact)
        for A in support:
            for B in support:
                coeff = conj(zmap[A]) * zmap[B]
                D = C + B
                if is_prefix(A, D):
                    rhs = rhs.plus(creation_expr(D[len(A):]).scaled(coeff))
                elif is_prefix(D, A):
                    rhs = rhs.plus(creation_expr(A[len(D):]).conjugated().scaled(coeff))
        return var(C).minus(rhs)

    def rows_of(exprs):
        out = []
        for e in exprs:
            out.append(e.re)
            out.append(e.im)
        return out

    r1 = [r1_row(C) for C in table_words]
    kernel = kernel_basis(rows_of(r1), width, tol)
    pinned_by = "fixed-point"
    if len(kernel) > 1:
        augmented = r1 + [sandwich_row(C) for C in table_words]
        kernel = kernel_basis(rows_of(augmented), width, tol)
        pinned_by = "fixed-point+sandwich"
    dim = len(kernel)
    if dim == 0:
        raise Inconsistent("fixed-point system has no nonzero solution")

    warnings = []
    if dim == 1:
        vec = kernel[0]
    else:
        vec = min_norm_solution(kernel, [[1 if j == 0 else 0 for j in range(width)],
                                         [1 if j == 1 else 0 for j in range(width)]], [1, 0], tol)
        warnings.append(
            f"solution space has dimension {dim}; returning the symmetric minimum-norm table"
        )

    def assemble(i: int):
        re, im = vec[2 * i], vec[2 * i + 1]
        return QQi(re, im) if exact else complex(re, im)

    v0 = assemble(0)
    if scalar_is_zero(v0, 1e-12):
        raise Inconsistent("solution space is orthogonal to the normalization v_empty = 1")
    table = {w: assemble(i) / v0 for w, i in index.items()}
    return LowMomentSolution(table, dim, pinned_by, warnings)


def _detect_code_family(code: set[Word], n: int):
    lengths = {len(w) for w in code}
    if len(lengths) == 1:
        m = lengths.pop()
        if code == set(all_words(n, m)):
            return "sub_cuntz", {"order": m}
    k = max(len(w) for w in code)
    progression = {(n,) * r + (i,) for r in range(k) for i in range(1, n)} | {(n,) * k}
    if code == progression:
        return "geometric_progression", {"steps": k}
    return "prefix_code", {}


def make_prefix_code_state(P, z, n: int | None = None, *, tol: float | None = None) -> MomentFunctional:
    """The state(s) omega with omega(s_W) = conj(z_W) on a finite prefix code P.

    Equivalently the state fixed by the isometry u = sum_W z_W s_W.  When the
    defining system does not pin omega uniquely, the symmetric mixture is
    returned and ``solution_dim`` records the dimension.
    """
    if n is None:
        n = max(max(W) for W in P)
    code = _validate_prefix_code(P, n)
    zmap = _align_coefficients(code, z, n)
    family, extra = _detect_code_family(set(code), n)
    if family == "sub_cuntz" and extra["order"] == 1:
        return make_cuntz([zmap[(i,)] for i in range(1, n + 1)], tol)

    sol = solve_low_moments(code, zmap, n, tol=tol)
    exact = all(is_exact_scalar(v) for v in zmap.values())
    support = sorted((w for w in code if not scalar_is_zero(zmap[w], 0.0)), key=lambda w: (len(w), w))
    M = max(len(w) for w in code)
    table = sol.table

    creation_memo: dict[Word, object] = {}

    def creation(C: Word):
        if len(C) <= M:
            return table[C]
        hit = creation_memo.get(C)
        if hit is None and C not in creation_memo:
            hit = sum((conj(zmap[W]) * creation(C[len(W):]) for W in support if is_prefix(W, C)), 0)
            creation_memo[C] = hit
        return hit

    moment_memo: dict[tuple[Word, Word], object] = {}

    def evaluator(J: Word, K: Word):
        # peel one code factor off the annihilation side: omega(x u) = omega(x)
        if not K:
            return creation(J)
        key = (J, K)
        hit = moment_memo.get(key)
        if hit is None and key not in moment_memo:
            acc = 0
            for W in support:
                if is_prefix(K, W):
                    acc = acc + zmap[W] * creation(J + W[len(K):])
                elif is_prefix(W, K):
                    acc = acc + zmap[W] * evaluator(J, K[len(W):])
            moment_memo[key] = acc
            hit = acc
        return hit

    u = CuntzElement(n, {(w, ()): zmap[w] for w in support})
    isometry, in_plus = is_isometry_in_plus(u, tol)
    if not (isometry and in_plus):
        raise NotUnit("the defining combination is not an isometry in the creation span")
    params = {"code": tuple(code), "z": tuple(zmap[w] for w in code), **extra}
    if family == "sub_cuntz":
        m = extra["order"]
        params["z_lex"] = tuple(zmap[w] for w in all_words(n, m))
    if family == "geometric_progression":
        k = extra["steps"]
        ordered = [zmap[(n,) * r + (i,)] for r in range(k) for i in range(1, n)]
        ordered.append(zmap[(n,) * k])
        params["z_indexed"] = tuple(ordered)
    return MomentFunctional(
        n,
        family,
        evaluator,
        params=params,
        exact=exact,
        minimal_isometry=u,
        warnings=sol.warnings,
        solution_dim=sol.solution_dim,
        pinned_by=sol.pinned_by,
    )


def make_sub_cuntz(m: int, z, n: int, *, tol: float | None = None) -> MomentFunctional:
    """Order-m state: omega(s_J) = conj(z_J) for every |J| = m.

    z may be a dict keyed by words or a flat sequence in lexicographic word
    order of length n^m.
    """
    words = list(all_words(n, m))
    if not isinstance(z, dict):
        z = list(z)
        if len(z) != len(words):
            raise SchemaError(f"expected {len(words)} coefficients in lexicographic order, got {len(z)}")
        z = dict(zip(words, z))
    return make_prefix_code_state(words, z, n, tol=tol)


def _progression_code(k: int, n: int) -> list[Word]:
    code = [(n,) * r + (i,) for r in range(k) for i in range(1, n)]
    code.append((n,) * k)
    return code


def make_geometric_progression(k: int, z, n: int, *, tol: float | None = None) -> MomentFunctional:
    """State prescribed on the progression code {n^r i : r < k} + {n^k}.

    z is indexed so that z[(n-1)r + i - 1] sits on the word n^r i and the last
    entry z[(n-1)k] on n^k.
    """
    code = _progression_code(k, n)
    z = list(z)
    if len(z) != (n - 1) * k + 1:
        raise SchemaError(f"expected {(n - 1) * k + 1} coefficients, got {len(z)}")
    return make_prefix_code_state(code, dict(zip(code, z)), n, tol=tol)


def hat_parameter(y, k: int):
    """Finite-progression parameter built from a unit vector y with |y_n| < 1.

    Entries y_n^r y_i on the words n^r i (r < k) and y_n^k on n^k; always a
    unit vector, and the resulting progression state coincides with the Cuntz
    state by y.
    """
    y = tuple(y)
    n = len(y)
    out = []
    for r in range(k):
        p = y[n - 1] ** r if r else 1
        for i in range(1, n):
            out.append(p * y[i - 1])
    out.append(y[n - 1] ** k)
    return out


def hat_parameter_inverse(z, k: int, n: int, *, tol: float | None = None):
    """Recover y with hat_parameter(y, k) == z, or None."""
    z = list(z)
    if len(z) != (n - 1) * k + 1:
        return None
    first = list(z[: n - 1])
    if all(scalar_is_zero(c, tol) for c in first):
        return None
    if k >= 2:
        j = max(range(n - 1), key=lambda t: abs(complex(z[t])))
        yn = z[(n - 1) + j] / z[j]
    else:
        # k = 1: z ends with y_n itself
        yn = z[-1]
    y = tuple(first) + (yn,)
    if abs(complex(yn)) >= 1:
        return None
    total = sum((abs2(c) for c in y), 0)
    if is_exact_scalar(total) or isinstance(total, Fraction):
        if total != 1:
            return None
    elif abs(float(total) - 1) > (DEFAULT_EQ_TOL if tol is None else tol):
        return None
    zhat = hat_parameter(y, k)
    if all(scalars_close(a, b, tol) for a, b in zip(zhat, z)):
        return y
    return None


# ---------------------------------------------------------------------------
# Induced product states
# ---------------------------------------------------------------------------


def make_induced_product(pre_blocks, rep_blocks, n: int, *, tol: float | None = None) -> MomentFunctional:
    """Product state induced by the eventually periodic sequence of unit vectors.

    z^(t) runs through pre_blocks then cycles rep_blocks; the moments are
    omega(s_J s_K*) = conj(z_J) z_K when |J| = |K| and 0 otherwise, with
    z_J = prod_t z^(t)_{j_t}.
    """
    pre = tuple(tuple(b) for b in pre_blocks)
    rep = tuple(tuple(b) for b in rep_blocks)
    if not rep:
        raise SchemaError("need at least one repeating block")
    for b in pre + rep:
        if len(b) != n:
            raise SchemaError(f"block of length {len(b)}, expected {n}")
        check_unit(b, tol)
    exact = all(is_exact_scalar(x) for b in pre + rep for x in b)

    def block(t: int):
        # 1-based position
        if t <= len(pre):
            return pre[t - 1]
        return rep[(t - len(pre) - 1) % len(rep)]

    def path_product(J: Word):
        out = 1
        for t, a in enumerate(J, start=1):
            out = out * block(t)[a - 1]
        return out

    def evaluator(J: Word, K: Word):
        if len(J) != len(K):
            return QQi(0) if exact else 0j
        return conj(path_product(J)) * path_product(K)

    seq = IsometrySequence(
        lambda i: CuntzElement(n, {((j,), ()): block(i)[j - 1] for j in range(1, n + 1)}),
        "proved",
        "row isometries a_i = sum_j z^(i)_j s_j of the inducing sequence",
    )
    return MomentFunctional(
        n,
        "induced_product",
        evaluator,
        params={"pre": pre, "rep": rep},
        exact=exact,
        properly_infinite=seq,
    )


# ---------------------------------------------------------------------------
# Mixtures and transforms
# ---------------------------------------------------------------------------


def make_mixture(states: Sequence[MomentFunctional], weights, *, tol: float | None = None) -> MomentFunctional:
    if len(states) < 2:
        raise SchemaError("a mixture needs at least two components")
    n = states[0].n
    if any(s.n != n for s in states):
        raise SchemaError("mixture components live over different algebras")
    weights = list(weights)
    if len(weights) != len(states):
        raise SchemaError("weights do not match components")
    total = sum(weights)
    ok = total == 1 if all(is_exact_scalar(w) for w in weights) else abs(complex(total) - 1) <= (
        DEFAULT_EQ_TOL if tol is None else tol
    )
    if not ok or any(complex(w).real <= 0 for w in weights):
        raise SchemaError("weights must be positive and sum to 1")
    exact = all(s.exact for s in states) and all(is_exact_scalar(w) for w in weights)

    def evaluator(J: Word, K: Word):
        return sum((w * s.moment(J, K) for w, s in zip(weights, states)), 0)

    return MomentFunctional(
        n,
        "mixture",
        evaluator,
        params={"weights": tuple(weights)},
        exact=exact,
        components=list(zip(weights, states)),
        pure_hint=False,
    )


def transform_gauge(omega: MomentFunctional, g, *, tol: float | None = None) -> MomentFunctional:
    """The state omega o alpha_g for the gauge automorphism alpha_g(s_i) = sum_j g_ji s_j."""
    n = omega.n
    check_unitary(g, n, tol)
    exact = omega.exact and all(is_exact_scalar(x) for row in g for x in row)

    def evaluator(J: Word, K: Word):
        acc = 0
        for Jp in all_words(n, len(J)):
            cj = 1
            for a, b in zip(Jp, J):
                cj = cj * g[a - 1][b - 1]
            for Kp in all_words(n, len(K)):
                ck = 1
                for a, b in zip(Kp, K):
                    ck = ck * g[a - 1][b - 1]
                acc = acc + cj * conj(ck) * omega.moment(Jp, Kp)
        return acc

    return MomentFunctional(
        n,
        "gauge",
        evaluator,
        params={"g": tuple(tuple(row) for row in g)},
        exact=exact,
        base=omega,
        evidence_horizon=omega.evidence_horizon,
        pure_hint=omega.pure_hint,
    )


def transform_sandwich(
    omega: MomentFunctional,
    terms: Sequence[tuple[object, CuntzElement]],
    tail_bound=0,
    *,
    equivalent_to_cuntz=None,
    tol: float | None = None,
) -> MomentFunctional:
    """The functional x -> sum_{l,l'} conj(c_l) c_l' omega(A_l* x A_l').

    ``terms`` is a finite list of (c_l, A_l), read as A Omega with
    A = sum_l c_l A_l in the cyclic representation of the base state.

    With ``tail_bound`` 0 the list is the whole sum, so the constructor
    evaluates the mass omega'(I) and refuses (TailNotCertified) unless it
    equals 1.  A positive ``tail_bound`` declares the list a truncation of a
    longer series and certifies ||(A - A_given) Omega|| <= tail_bound; every
    moment of a word pair then carries the error bound

        truncation_error = tail_bound^2 + 2 sqrt(mass) tail_bound,

    recorded in ``params`` and in a warning, and the mass check is relaxed to
    |sqrt(mass) - 1| <= tail_bound.  A user-supplied ``equivalent_to_cuntz``
    parameter is recorded with provenance "user" and is not verified.
    """
    n = omega.n
    terms = [(c, A) for c, A in terms]
    for _, A in terms:
        if A.n != n:
            raise SchemaError("sandwich element over a different algebra")
    tail = float(tail_bound)
    if tail < 0:
        raise SchemaError("tail_bound must be nonnegative")
    exact = omega.exact and all(is_exact_scalar(c) for c, _ in terms) and tail == 0

    def evaluator(J: Word, K: Word):
        mid = monomial(n, J, K)
        acc = 0
        for cl, Al in terms:
            left = adjoint(Al)
            for cl2, Al2 in terms:
                x = multiply(multiply(left, mid), Al2)
                acc = acc + conj(cl) * cl2 * omega.moment_of_element(x)
        return acc

    eps = DEFAULT_EQ_TOL if tol is None else tol
    mass = evaluator((), ())
    params: dict = {"terms": terms, "tail_bound": tail}
    warnings: list[str] = []
    if tail == 0:
        if is_exact_scalar(mass):
            if mass != 1:
                raise TailNotCertified(f"transform has total mass {mass}, expected 1")
        elif abs(complex(mass) - 1) > eps:
            raise TailNotCertified(f"transform has total mass {complex(mass)}, expected 1")
    else:
        root = sqrt(max(float(complex(mass).real), 0.0))
        if abs(root - 1) > tail + eps:
            raise TailNotCertified(
                f"partial mass {complex(mass)} is not within the declared tail bound of a unit vector"
            )
        truncation_error = tail * tail + 2 * root * tail
        params["truncation_error"] = truncation_error
        warnings.append(
            f"moments carry a truncation error of at most {format_float(truncation_error)}"
        )

    return MomentFunctional(
        n,
        "sandwich",
        evaluator,
        params=params,
        exact=exact,
        base=omega,
        evidence_horizon=omega.evidence_horizon,
        equivalent_to_cuntz=tuple(equivalent_to_cuntz) if equivalent_to_cuntz is not None else None,
        equivalence_provenance="user" if equivalent_to_cuntz is not None else None,
        warnings=warnings,
        # a unit vector state of an irreducible cyclic representation is pure;
        # over a non-pure base nothing follows, so only True propagates
        pure_hint=True if omega.pure_hint is True else None,
    )


def make_split_series_sandwich() -> MomentFunctional:
    """The series sandwich sum_l 2^-l omega(A_l* . A_l), A_l = s_2^{l-1} s_1 s_2^l,
    over the Cuntz state by (1, 0) on O_2.

    In the permutative model of the base state, A Omega = sum_l 2^{-l/2} e_{x_l}
    with x_l = 2^{l-1} 1 2^l 1 1 1 ...; two shifted tails of x_l and x_{l'} can
    only agree when l = l' (the positions of the letter 1 pin l), so the moments
    collapse to the diagonal series

        omega'(s_J s_K*) = sum_l 2^-l [x_l starts J][x_l starts K]
                                      [shift^{|J|} x_l = shift^{|K|} x_l],

    which has an exact dyadic value: finitely many l plus a geometric tail that
    only survives when J = K is a power of the letter 2.
    """
    n = 2

    def x_word(l: int) -> EventuallyPeriodicWord:
        return EventuallyPeriodicWord((2,) * (l - 1) + (1,) + (2,) * l, (1,), n)

    def evaluator(J: Word, K: Word):
        lcut = max(len(J), len(K), 1) + 1
        total = Fraction(0)
        for l in range(1, lcut):
            x = x_word(l)
            if x.starts_with(J) and x.starts_with(K) and x.shift_by(len(J)) == x.shift_by(len(K)):
                total += Fraction(1, 2**l)
        if len(J) == len(K) and set(J) <= {2} and set(K) <= {2} and J == K:
            total += Fraction(1, 2 ** (lcut - 1))
        return QQi(total)

    base = make_cuntz((QQi(1), QQi(0)))
    return MomentFunctional(
        n,
        "sandwich_series",
        evaluator,
        params={"schedule": "dyadic", "axis": 2},
        exact=True,
        base=base,
        equivalent_to_cuntz=(QQi(1), QQi(0)),
        equivalence_provenance="family",
        pure_hint=True,
    )


# ---------------------------------------------------------------------------
# Sanity gate
# ---------------------------------------------------------------------------


def positivity_check(omega: MomentFunctional, level: int = 2, tol: float | None = None):
    """PSD check of the Gram matrix of {pi(s_J)* Omega : |J| <= level}.

    Returns (ok, min_eigenvalue_estimate).
    """
    words = list(words_upto(omega.n, level))
    return hermitian_psd_check(gram_matrix(omega, words), tol)

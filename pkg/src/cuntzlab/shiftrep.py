"""Exact simulators of permutative representations of O_n.

Two models are provided:

* :class:`ShiftRepresentation` -- the shift representation on the tail class
  of a one-sided infinite word x: basis vectors e_y for words y with the same
  tail as x, with pi(s_i) e_y = e_{i.y} and pi(s_i)* e_y = [y_1 = i] e_{shift y}.
  Eventually periodic words give a fully exact model; lazily defined words
  (rule-based, e.g. Thue-Morse) are simulated up to a declared horizon and
  results that depend on letters beyond it are marked as cutoff-verified.

* :class:`GridRepresentation` -- the representation on l^2(N x Z) with
  pi(s_i) e_{k,m} = e_{n(k-1)+i, m+1}; the extra Z-grading rules out any
  finite-dimensional invariant subspace.

Vectors are finitely supported combinations of basis keys
(:class:`StateVector`), operators act exactly, and :func:`vector_state` turns
a vector into a :class:`~cuntzlab.moments.MomentFunctional` carrying the
structural certificates the classification layer consumes.  The grading of
the representation space generated by an s_i*-invariant subspace is computed
by :func:`dhj_grading`, and :func:`lemma_convergence_check` tracks how fast
a[l]* v approaches such a subspace.
"""

from __future__ import annotations

from fractions import Fraction
from math import sqrt
from typing import Callable, Iterable, Sequence

from .errors import NotInvariant, NotUnit, SchemaError
from .moments import IsometrySequence, MomentFunctional
from .scalars import DEFAULT_RANK_TOL, abs2, conj, is_exact_scalar, scalar_is_zero
from .symalg import CuntzElement, adjoint, is_isometry_in_plus, monomial
from .words import EventuallyPeriodicWord, LazyWord, Word, check_word

__all__ = [
    "StateVector",
    "ShiftRepresentation",
    "GridRepresentation",
    "apply_generator",
    "apply_element",
    "vector_state",
    "dhj_grading",
    "lemma_convergence_check",
]


class StateVector:
    """A finitely supported vector: a map from basis keys to coefficients.

    Zero coefficients are never stored.  The inner product is linear in the
    second argument and, by default, sums over structurally equal keys.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        clean = {}
        for k, c in (coeffs or {}).items():
            if not scalar_is_zero(c, 0.0):
                clean[k] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @classmethod
    def basis(cls, key) -> "StateVector":
        return cls({key: 1})

    def items(self):
        return self.coeffs.items()

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: "StateVector") -> "StateVector":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return StateVector(out)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + other.scale(-1)

    def __neg__(self) -> "StateVector":
        return self.scale(-1)

    def scale(self, c) -> "StateVector":
        return StateVector({k: c * v for k, v in self.coeffs.items()})

    def inner(self, other: "StateVector", key_equal: Callable | None = None):
        """<self, other>, linear in the second argument."""
        if key_equal is None:
            return sum(
                (conj(c) * other.coeffs[k] for k, c in self.coeffs.items() if k in other.coeffs), 0
            )
        return sum(
            (conj(c) * d for k, c in self.coeffs.items() for l, d in other.coeffs.items() if key_equal(k, l)),
            0,
        )

    def norm2(self, key_equal: Callable | None = None):
        return self.inner(self, key_equal)

    def is_zero(self, tol: float | None = None) -> bool:
        return all(scalar_is_zero(c, tol) for c in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        parts = [f"{c!r}*e[{k!r}]" for k, c in self.coeffs.items()]
        return "StateVector(" + (" + ".join(parts) if parts else "0") + ")"


class ShiftRepresentation:
    """Shift representation on the tail class of the word x.

    For eventually periodic x the basis keys are canonical
    :class:`EventuallyPeriodicWord` objects and everything is exact.  For a
    :class:`LazyWord` the keys are pairs (prefix, t) standing for
    prefix . shift^t(x), canonicalized so the prefix cannot be absorbed into
    the tail; key equality beyond the canonical form is checked letterwise up
    to the word's horizon.
    """

    def __init__(self, word: EventuallyPeriodicWord | LazyWord):
        if not isinstance(word, (EventuallyPeriodicWord, LazyWord)):
            raise SchemaError("expected an eventually periodic or lazily defined word")
        self.word = word
        self.n = word.n
        self.lazy = isinstance(word, LazyWord)
        self.exact = not self.lazy
        self.horizon = word.horizon if self.lazy else None

    # -- keys ---------------------------------------------------------------

    def generator_key(self):
        return ((), 0) if self.lazy else self.word

    def omega(self) -> StateVector:
        return StateVector.basis(self.generator_key())

    def _canonical(self, prefix: Word, t: int):
        while prefix and t >= 1 and prefix[-1] == self.word.letter(t):
            prefix = prefix[:-1]
            t -= 1
        return (prefix, t)

    def key_letter(self, key, i: int) -> int:
        """The i-th letter (1-based) of the word named by the key."""
        if self.lazy:
            prefix, t = key
            return prefix[i - 1] if i <= len(prefix) else self.word.letter(t + i - len(prefix))
        return key.letter(i)

    def up(self, key, i: int):
        """Key of pi(s_i) e_key."""
        if self.lazy:
            prefix, t = key
            return self._canonical((i,) + prefix, t)
        return key.prepend((i,))

    def down(self, key, i: int):
        """Key of pi(s_i)* e_key, or None when it vanishes."""
        if self.lazy:
            prefix, t = key
            if prefix:
                return (prefix[1:], t) if prefix[0] == i else None
            return ((), t + 1) if self.word.letter(t + 1) == i else None
        return key.shift() if key.letter(1) == i else None

    def key_equal(self, a, b) -> bool:
        if a == b:
            return True
        if not self.lazy:
            return False
        # letterwise comparison up to the horizon: a disagreement is exact,
        # agreement is only cutoff-verified (the representation is marked so)
        return all(self.key_letter(a, i) == self.key_letter(b, i) for i in range(1, self.horizon + 1))

    def key_str(self, key) -> str:
        if self.lazy:
            prefix, t = key
            head = "".join(str(a) for a in prefix)
            return f"{head}.shift^{t}({self.word.name})" if head else f"shift^{t}({self.word.name})"
        head = "".join(str(a) for a in key.pre)
        body = "".join(str(a) for a in key.per)
        return f"{head}({body})^inf" if head else f"({body})^inf"


class GridRepresentation:
    """Representation on l^2(N x Z): pi(s_i) e_{k,m} = e_{n(k-1)+i, m+1}."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise SchemaError("need an integer alphabet size n >= 2")
        self.n = n
        self.lazy = False
        self.exact = True
        self.horizon = None

    def generator_key(self):
        return (1, 0)

    def omega(self) -> StateVector:
        return StateVector.basis(self.generator_key())

    def check_key(self, key):
        k, m = key
        if not isinstance(k, int) or isinstance(k, bool) or k < 1 or not isinstance(m, int) or isinstance(m, bool):
            raise SchemaError(f"grid keys are pairs (k >= 1, m in Z); got {key!r}")
        return (k, m)

    def up(self, key, i: int):
        k, m = key
        return (self.n * (k - 1) + i, m + 1)

    def down(self, key, i: int):
        k, m = key
        if (k - 1) % self.n != i - 1:
            return None
        return ((k - 1) // self.n + 1, m - 1)

    def key_equal(self, a, b) -> bool:
        return a == b

    def key_str(self, key) -> str:
        return f"({key[0]},{key[1]})"


def _inner_fn(rep):
    if getattr(rep, "lazy", False):
        return rep.key_equal
    return None


def apply_generator(rep, v: StateVector, i: int, dagger: bool = False) -> StateVector:
    """pi(s_i) v, or pi(s_i)* v when dagger=True."""
    if not (1 <= i <= rep.n):
        raise SchemaError(f"generator index {i} outside 1..{rep.n}")
    out: dict = {}
    for key, c in v.items():
        new = rep.down(key, i) if dagger else rep.up(key, i)
        if new is not None:
            out[new] = out.get(new, 0) + c
    return StateVector(out)


def _strip_word(rep, v: StateVector, K: Word) -> StateVector:
    # pi(s_K)* v: strip the letters of K from the front, first letter first
    for a in K:
        v = apply_generator(rep, v, a, dagger=True)
        if not v.coeffs:
            break
    return v

def _raise_word(rep, v: StateVector, J: Word) -> StateVector:
    # pi(s_J) v: apply the letters right-to-left so the word reads off in order
    for a in reversed(J):
        v = apply_generator(rep, v, a)
    return v


def apply_element(rep, x: CuntzElement, v: StateVector) -> StateVector:
    """pi(x) v for x in the *-algebra (finite combination of s_J s_K*)."""
    if x.n != rep.n:
        raise SchemaError(f"element over n={x.n}, representation over n={rep.n}")
    out = StateVector({})
    for (J, K), c in x.terms.items():
        out = out + _raise_word(rep, _strip_word(rep, v, K), J).scale(c)
    return out


def _grid_digit_path(k: int, n: int) -> tuple[int, ...]:
    # e_{k,m} = pi(s_{p_1}) ... pi(s_{p_r}) e_{1, m-r} for this letter path
    path = []
    while k > 1:
        i = (k - 1) % n + 1
        path.append(i)
        k = (k - 1) // n + 1
    return tuple(path)


def vector_state(rep, x) -> MomentFunctional:
    """The state omega(y) = <v, pi(y) v> / <v, v> of a vector in the representation.

    x may be a basis key or a StateVector.  Moments divide by the squared norm,
    so unnormalized exact vectors stay exact.  Structural certificates are
    attached where the representation provides them: a purely periodic basis
    vector yields a fixed isometry (minimality), a grid basis vector yields a
    proved delta-table isometry sequence (proper infiniteness), and a lazy
    word yields the same table as finitely checked evidence.
    """
    v = x if isinstance(x, StateVector) else StateVector.basis(x)
    if isinstance(rep, GridRepresentation):
        for key in v.coeffs:
            rep.check_key(key)
    key_equal = _inner_fn(rep)
    nrm2 = v.norm2(key_equal)
    if scalar_is_zero(nrm2, None):
        raise SchemaError("the zero vector does not define a state")

    def evaluator(J: Word, K: Word):
        left = _strip_word(rep, v, J)
        right = _strip_word(rep, v, K)
        val = left.inner(right, key_equal)
        if is_exact_scalar(val) and is_exact_scalar(nrm2):
            return val / nrm2 if not isinstance(val, int) or not isinstance(nrm2, int) else Fraction(val, nrm2)
        return complex(val) / complex(nrm2)

    n = rep.n
    kwargs: dict = {"params": {"rep": rep, "vector": v}, "exact": rep.exact and all(
        is_exact_scalar(c) for c in v.coeffs.values()
    )}
    if isinstance(rep, (ShiftRepresentation, GridRepresentation)):
        # vector state of an irreducible representation
        kwargs["pure_hint"] = True
    single_key = next(iter(v.coeffs)) if len(v) == 1 else None

    if isinstance(rep, ShiftRepresentation) and not rep.lazy:
        if single_key is not None:
            y = single_key
            kwargs["params"].update(word=y, preperiod=y.pre, period=y.per)
            family = "shift"
            if y.is_purely_periodic:
                kwargs["minimal_isometry"] = monomial(n, y.per)
        else:
            family = "shift_vector"
            kwargs["params"]["rep_word"] = rep.word
    elif isinstance(rep, ShiftRepresentation):
        family = "shift_lazy"
        kwargs["params"].update(rep_word=rep.word, key=single_key)
        kwargs["evidence_horizon"] = rep.horizon
        if single_key is not None:
            prefix, t = single_key

            def lazy_letter(i: int, prefix=prefix, t=t):
                return prefix[i - 1] if i <= len(prefix) else rep.word.letter(t + i - len(prefix))

            kwargs["properly_infinite"] = IsometrySequence(
                lambda i: monomial(n, (lazy_letter(i),)),
                "evidence",
                "generators along the letters of the defining word",
            )
    elif isinstance(rep, GridRepresentation):
        if single_key is not None:
            k, m = single_key
            path = _grid_digit_path(k, n)
            kwargs["params"].update(k=k, m=m, path=path)
            family = "grid"

            def grid_letter(i: int, path=path):
                return path[i - 1] if i <= len(path) else 1

            kwargs["properly_infinite"] = IsometrySequence(
                lambda i: monomial(n, (grid_letter(i),)),
                "proved",
                "digit path of the base vector padded by the first generator; "
                "the Z-grading makes the delta table exact at every order",
            )
        else:
            family = "grid_vector"
    else:
        family = "vector"
    return MomentFunctional(n, family, evaluator, **kwargs)


# ---------------------------------------------------------------------------
# Orthogonal grading and convergence checks
# ---------------------------------------------------------------------------


def _project_out(w: StateVector, basis: Sequence[StateVector], key_equal, exact: bool, tol: float):
    """Residual of w against an orthogonal basis (two passes in float mode)."""
    passes = 1 if exact else 2
    for _ in range(passes):
        for b in basis:
            bb = b.norm2(key_equal)
            bw = b.inner(w, key_equal)
            if scalar_is_zero(bw, 0.0):
                continue
            w = w - b.scale(bw / bb)
    return w

def _residual_is_zero(r: StateVector, scale2, exact: bool, tol: float) -> bool:
    if exact:
        return r.is_zero(0.0)
    n2 = abs(complex(r.norm2()))
    return n2 <= (tol * tol) * max(1.0, abs(complex(scale2)))


def _orthogonal_basis(vectors: Iterable[StateVector], key_equal, exact: bool, tol: float,
                      seed: Sequence[StateVector] = ()):
    """Extend the orthogonal family ``seed`` by Gram-Schmidt over ``vectors``."""
    new: list[StateVector] = []
    for v in vectors:
        r = _project_out(v, list(seed) + new, key_equal, exact, tol)
        if not _residual_is_zero(r, v.norm2(key_equal), exact, tol):
            new.append(r)
    return new


def _normalize_float(basis: list[StateVector]) -> list[StateVector]:
    out = []
    for b in basis:
        nrm = sqrt(abs(complex(b.norm2())))
        out.append(b.scale(1.0 / nrm))
    return out


def _check_invariant(rep, vectors: Sequence[StateVector], basis: Sequence[StateVector],
                     key_equal, exact: bool, tol: float) -> None:
    for v in vectors:
        for i in range(1, rep.n + 1):
            w = apply_generator(rep, v, i, dagger=True)
            r = _project_out(w, basis, key_equal, exact, tol)
            if not _residual_is_zero(r, w.norm2(key_equal) if w.coeffs else 1, exact, tol):
                raise NotInvariant(
                    f"pi(s_{i})* maps the subspace outside itself (residual on {rep.key_str(next(iter(r.coeffs)))})"
                )


def dhj_grading(rep, M: Sequence[StateVector], depth: int, tol: float | None = None) -> list[list[StateVector]]:
    """Orthogonal grading H_0, ..., H_depth generated by the invariant subspace M.

    H_0 = span(M) and H_k is the orthogonal complement of the previous levels
    inside span{pi(s_J) v : |J| = k, v in M}; the levels are returned as
    orthonormal bases in float mode and unnormalized orthogonal bases in exact
    mode.  Raises NotInvariant unless pi(s_i)* M lies in span(M) for every i.
    """
    eps = DEFAULT_RANK_TOL if tol is None else tol
    vectors = list(M)
    if not vectors:
        raise SchemaError("M must span a nonzero subspace")
    key_equal = _inner_fn(rep)
    exact = rep.exact and all(is_exact_scalar(c) for v in vectors for c in v.coeffs.values())
    base = _orthogonal_basis(vectors, key_equal, exact, eps)
    if not base:
        raise SchemaError("M must span a nonzero subspace")
    _check_invariant(rep, vectors, base, key_equal, exact, eps)

    levels = [base]
    accumulated = list(base)
    spanning = list(base)  # independent spanning set of the current level-k image
    for _ in range(depth):
        images = [apply_generator(rep, b, i) for b in spanning for i in range(1, rep.n + 1)]
        spanning = _orthogonal_basis(images, key_equal, exact, eps)
        new = _orthogonal_basis(images, key_equal, exact, eps, seed=accumulated)
        levels.append(new)
        accumulated.extend(new)
    if not exact:
        levels = [_normalize_float(level) for level in levels]
    return levels


def lemma_convergence_check(rep, M: Sequence[StateVector], a, v: StateVector, L: int,
                            tol: float | None = None) -> list[float]:
    """Distances || a[l]* v - P_M a[l]* v || for l = 1..L, a[l] = a_1 ... a_l.

    ``a`` may be an IsometrySequence, a callable i -> element, or a list of
    elements; each a_i must be an isometry inside the creation span.  M must
    be s_i*-invariant (NotInvariant otherwise).  The sequence is expected to
    decrease; its limit is 0 exactly when the subspace the a_i squeeze onto
    sits inside span(M).
    """
    eps = DEFAULT_RANK_TOL if tol is None else tol
    if isinstance(a, IsometrySequence):
        factory = a.factory
    elif callable(a):
        factory = a
    else:
        seq = list(a)

        def factory(i: int, seq=seq):
            return seq[i - 1]

    key_equal = _inner_fn(rep)
    vectors = list(M)
    exact = rep.exact and all(is_exact_scalar(c) for w in vectors for c in w.coeffs.values())
    basis = _orthogonal_basis(vectors, key_equal, exact, eps)
    if not basis:
        raise SchemaError("M must span a nonzero subspace")
    _check_invariant(rep, vectors, basis, key_equal, exact, eps)

    norms = []
    w = v
    for l in range(1, L + 1):
        al = factory(l)
        isometry, in_plus = is_isometry_in_plus(al, tol)
        if not (isometry and in_plus):
            raise NotUnit(f"a_{l} is not an isometry in the creation span")
        w = apply_element(rep, adjoint(al), w)
        r = _project_out(w, basis, key_equal, exact, eps)
        norms.append(sqrt(abs(complex(r.norm2(key_equal)))))
    return norms

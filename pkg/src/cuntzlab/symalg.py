"""Symbolic *-algebra of the Cuntz relations on n isometries.

Elements are finite combinations of monomials s_J s_K* (J, K finite words)
subject to s_i* s_j = delta_ij I and sum_i s_i s_i* = I.  The second relation
makes the monomials linearly dependent; a unique normal form is obtained by
eliminating every monomial whose two words both end in the letter n via

    s_{Jn} s_{Kn}*  =  s_J s_K*  -  sum_{i<n} s_{Ji} s_{Ki}*.

The surviving monomials form a linear basis of the dense *-subalgebra, so
equality of normal forms is equality in O_n.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import NotUnitary, SchemaError
from .scalars import DEFAULT_EQ_TOL, abs2, conj, is_exact_scalar, format_scalar, scalar_is_zero
from .words import Word, check_word, is_prefix

__all__ = [
    "ReducedPair",
    "reduce_starred_pair",
    "CuntzElement",
    "identity",
    "zero",
    "gen",
    "monomial",
    "multiply",
    "adjoint",
    "is_isometry_in_plus",
    "gauge_apply",
    "check_unitary",
]


class ReducedPair(NamedTuple):
    """Normal form of s_J* s_K: kind is identity|creation|annihilation|zero."""

    kind: str
    word: Word | None


def reduce_starred_pair(J: Word, K: Word) -> ReducedPair:
    """Reduce s_J* s_K using s_i* s_j = delta_ij I.

    >>> reduce_starred_pair((1,), (1, 2))
    ReducedPair(kind='creation', word=(2,))
    """
    J, K = tuple(J), tuple(K)
    if J == K:
        return ReducedPair("identity", None)
    if is_prefix(J, K):
        return ReducedPair("creation", K[len(J):])
    if is_prefix(K, J):
        return ReducedPair("annihilation", J[len(K):])
    return ReducedPair("zero", None)


def _normalized(n: int, raw: dict[tuple[Word, Word], object]) -> dict[tuple[Word, Word], object]:
    out: dict[tuple[Word, Word], object] = {}
    stack = list(raw.items())
    while stack:
        (J, K), c = stack.pop()
        if J and K and J[-1] == n and K[-1] == n:
            body = ((J[:-1], K[:-1]), c)
            stack.append(body)
            for i in range(1, n):
                stack.append(((J[:-1] + (i,), K[:-1] + (i,)), -c))
            continue
        acc = out.get((J, K))
        acc = c if acc is None else acc + c
        if acc == 0:
            out.pop((J, K), None)
        else:
            out[(J, K)] = acc
    return out


class CuntzElement:
    """A normal-form element of the dense *-subalgebra of O_n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[tuple[Word, Word], object] | None = None):
        if n < 2:
            raise SchemaError(f"alphabet size must be >= 2, got {n}")
        raw = {}
        for (J, K), c in (terms or {}).items():
            raw[(check_word(J, n), check_word(K, n))] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", _normalized(n, raw))

    def __setattr__(self, name, value):
        raise AttributeError("CuntzElement is immutable")

    # -- arithmetic ----------------------------------------------------------

    def _check_same_algebra(self, other: "CuntzElement"):
        if self.n != other.n:
            raise SchemaError(f"elements over different algebras: n={self.n} vs n={other.n}")

    def __add__(self, other: "CuntzElement") -> "CuntzElement":
        self._check_same_algebra(other)
        raw = dict(self.terms)
        for key, c in other.terms.items():
            raw[key] = raw.get(key, 0) + c
        return CuntzElement(self.n, raw)

    def __sub__(self, other: "CuntzElement") -> "CuntzElement":
        return self + (-1) * other

    def __neg__(self) -> "CuntzElement":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, CuntzElement):
            return multiply(self, other)
        return CuntzElement(self.n, {key: c * other for key, c in self.terms.items()})

    def __rmul__(self, scalar):
        return CuntzElement(self.n, {key: scalar * c for key, c in self.terms.items()})

    def adjoint(self) -> "CuntzElement":
        return adjoint(self)

    # -- inspection ----------------------------------------------------------

    def is_zero(self, tol: float | None = None) -> bool:
        return all(scalar_is_zero(c, tol) for c in self.terms.values())

    def isclose(self, other: "CuntzElement", tol: float | None = None) -> bool:
        self._check_same_algebra(other)
        return (self - other).is_zero(tol)

    def in_plus_span(self) -> bool:
        """True when every term is a pure creation monomial s_J with J nonempty."""
        return all(K == () and J != () for (J, K) in self.terms)

    def sorted_terms(self) -> list[tuple[Word, Word, object]]:
        keys = sorted(self.terms, key=lambda jk: (len(jk[0]), jk[0], len(jk[1]), jk[1]))
        return [(J, K, self.terms[(J, K)]) for J, K in keys]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CuntzElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms))))

    def __repr__(self):
        if not self.terms:
            return f"CuntzElement(n={self.n}, 0)"
        bits = []
        for J, K, c in self.sorted_terms():
            mono = "I" if (not J and not K) else ""
            if J:
                mono += "s" + "".join(map(str, J))
            if K:
                mono += "s" + "".join(map(str, K)) + "*"
            bits.append(f"({format_scalar(c)})*{mono}")
        return f"CuntzElement(n={self.n}, " + " + ".join(bits) + ")"


def identity(n: int) -> CuntzElement:
    return CuntzElement(n, {((), ()): 1})


def zero(n: int) -> CuntzElement:
    return CuntzElement(n, {})


def gen(n: int, i: int) -> CuntzElement:
    """The generator s_i."""
    return CuntzElement(n, {((i,), ()): 1})


def monomial(n: int, J: Word, K: Word = (), coeff=1) -> CuntzElement:
    """The monomial coeff * s_J s_K*."""
    return CuntzElement(n, {(tuple(J), tuple(K)): coeff})


def multiply(x: CuntzElement, y: CuntzElement) -> CuntzElement:
    """Product in O_n: (s_J s_K*)(s_L s_M*) reduced through s_K* s_L."""
    x._check_same_algebra(y)
    raw: dict[tuple[Word, Word], object] = {}
    for (J, K), cx in x.terms.items():
        for (L, M), cy in y.terms.items():
            red = reduce_starred_pair(K, L)
            if red.kind == "zero":
                continue
            if red.kind == "identity":
                key = (J, M)
            elif red.kind == "creation":
                key = (J + red.word, M)
            else:  # annihilation: s_K* s_L = s_C* with K = L.C, and s_C* s_M* = (s_M s_C)*
                key = (J, M + red.word)
            c = cx * cy
            raw[key] = raw.get(key, 0) + c
    return CuntzElement(x.n, raw)


def adjoint(x: CuntzElement) -> CuntzElement:
    return CuntzElement(x.n, {(K, J): conj(c) for (J, K), c in x.terms.items()})


def is_isometry_in_plus(u: CuntzElement, tol: float | None = None) -> tuple[bool, bool]:
    """Return (isometry, in_plus): whether u*u = I and whether u lies in
    the span of the pure creation monomials {s_J : J nonempty}."""
    isometry = multiply(adjoint(u), u).isclose(identity(u.n), tol)
    return isometry, u.in_plus_span()


def check_unitary(g, n: int, tol: float | None = None) -> None:
    """Raise NotUnitary unless g is an n x n unitary matrix."""
    if len(g) != n or any(len(row) != n for row in g):
        raise NotUnitary(f"expected an {n} x {n} matrix")
    eps = DEFAULT_EQ_TOL if tol is None else tol
    for a in range(n):
        for b in range(n):
            s = sum((conj(g[k][a]) * g[k][b] for k in range(n)), 0)
            target = 1 if a == b else 0
            if is_exact_scalar(s):
                if s != target:
                    raise NotUnitary(f"g*g != I at entry ({a + 1},{b + 1}): {s}")
            elif abs(complex(s) - target) > eps:
                raise NotUnitary(f"g*g != I at entry ({a + 1},{b + 1}): {complex(s)}")


def gauge_apply(g, x: CuntzElement, tol: float | None = None) -> CuntzElement:
    """Apply the gauge automorphism alpha_g(s_i) = sum_j g[j][i] s_j termwise."""
    n = x.n
    check_unitary(g, n, tol)
    images = [None] + [
        CuntzElement(n, {((j,), ()): g[j - 1][i - 1] for j in range(1, n + 1)})
        for i in range(1, n + 1)
    ]

    def image_of_word(J: Word) -> CuntzElement:
        out = identity(n)
        for a in J:
            out = multiply(out, images[a])
        return out

    total = zero(n)
    for (J, K), c in x.terms.items():
        piece = multiply(image_of_word(J), adjoint(image_of_word(K)))
        total = total + c * piece
    return total

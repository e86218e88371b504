"""Free algebra on matrix-entry generators l_i^j(p) and normal ordering.

A letter is the integer ``(pid * N + i) * N + j`` for generator l_i^j at the
registered point with id ``pid`` (0-based i, j); a word is a tuple of
letters.  Normal order means point ids ascending along every word; letters
at the same point are never reordered.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .scalars import ONE, ZERO, ParamPoint, PointRegistry, format_scalar, to_scalar
from .tensor import TensorOp


class MissingRuleError(LookupError):
    pass


class SpecialParameterError(ArithmeticError):
    """The exchange system is singular at these particular points."""


def letter(pid: int, i: int, j: int, N: int) -> int:
    return (pid * N + i) * N + j


def split_letter(code: int, N: int) -> tuple[int, int, int]:
    pid, rest = divmod(code, N * N)
    i, j = divmod(rest, N)
    return pid, i, j


class NCPoly:
    """Finite linear combination of words with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple, object] = {}
        if terms:
            for w, c in terms.items():
                c = to_scalar(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def gen(cls, code: int) -> "NCPoly":
        return cls._raw({(code,): ONE})

    @classmethod
    def const(cls, c) -> "NCPoly":
        c = to_scalar(c)
        return cls._raw({(): c} if c else {})

    def copy(self) -> "NCPoly":
        return NCPoly._raw(dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def iadd_scaled(self, other: "NCPoly", c=ONE) -> "NCPoly":
        t = self.terms
        for w, v in other.terms.items():
            s = t.get(w, ZERO) + c * v
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return self

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.const(other)
        return self.copy().iadd_scaled(other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.const(other)
        return self.copy().iadd_scaled(other, -ONE)

    def __rsub__(self, other):
        return NCPoly.const(other) - self

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "NCPoly":
        c = to_scalar(c)
        if not c:
            return NCPoly()
        return NCPoly._raw({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NCPoly._raw(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.const(other)
        return self.terms == other.terms

    __hash__ = None

    def pids(self, N: int) -> set[int]:
        return {code // (N * N) for w in self.terms for code in w}

    def format(self, N: int) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            letters = "*".join("l{}{}({})".format(i + 1, j + 1, p) for p, i, j in (split_letter(x, N) for x in w))
            parts.append(f"({format_scalar(c)})" + ("*" + letters if letters else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly({len(self.terms)} terms, degree {self.degree()})"


class NCMatrix:
    """Rectangular array of NCPoly entries."""

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.shape = (len(self.entries), len(self.entries[0]) if self.entries else 0)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "NCMatrix":
        m = n if m is None else m
        return cls([[NCPoly() for _ in range(m)] for _ in range(n)])

    @classmethod
    def from_scalars(cls, A) -> "NCMatrix":
        A = A.mat if isinstance(A, TensorOp) else np.asarray(A, dtype=object)
        return cls([[NCPoly.const(x) for x in row] for row in A])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __setitem__(self, idx, value):
        i, j = idx
        self.entries[i][j] = value

    def _same_shape(self, other):
        if not isinstance(other, NCMatrix) or self.shape != other.shape:
            raise ValueError("shape mismatch")

    def __add__(self, other: "NCMatrix") -> "NCMatrix":
        self._same_shape(other)
        return NCMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "NCMatrix") -> "NCMatrix":
        self._same_shape(other)
        return NCMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return NCMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "NCMatrix":
        return NCMatrix([[a.scale(c) for a in row] for row in self.entries])

    def __matmul__(self, other):
        if isinstance(other, NCMatrix):
            return self._mul_nc(other)
        return self.mul_scalar_right(other)

    def __rmatmul__(self, other):
        return self.mul_scalar_left(other)

    def _mul_nc(self, other: "NCMatrix") -> "NCMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = NCMatrix.zeros(n, m)
        for i in range(n):
            for j in range(m):
                acc = NCPoly()
                for t in range(k):
                    a = self.entries[i][t]
                    b = other.entries[t][j]
                    if a and b:
                        acc.iadd_scaled(a * b)
                out.entries[i][j] = acc
        return out

    def mul_scalar_left(self, A) -> "NCMatrix":
        A = A.mat if isinstance(A, TensorOp) else np.asarray(A, dtype=object)
        n, k = A.shape
        if k != self.shape[0]:
            raise ValueError(f"shape mismatch: {A.shape} @ {self.shape}")
        m = self.shape[1]
        out = NCMatrix.zeros(n, m)
        for i in range(n):
            nz = [(t, A[i, t]) for t in range(k) if A[i, t]]
            for j in range(m):
                acc = NCPoly()
                for t, c in nz:
                    acc.iadd_scaled(self.entries[t][j], c)
                out.entries[i][j] = acc
        return out

    def mul_scalar_right(self, B) -> "NCMatrix":
        B = B.mat if isinstance(B, TensorOp) else np.asarray(B, dtype=object)
        k, m = B.shape
        if k != self.shape[1]:
            raise ValueError(f"shape mismatch: {self.shape} @ {B.shape}")
        n = self.shape[0]
        cols = [[(t, B[t, j]) for t in range(k) if B[t, j]] for j in range(m)]
        out = NCMatrix.zeros(n, m)
        for i in range(n):
            row = self.entries[i]
            for j in range(m):
                acc = NCPoly()
                for t, c in cols[j]:
                    acc.iadd_scaled(row[t], c)
                out.entries[i][j] = acc
        return out

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def term_count(self) -> int:
        return sum(len(a) for row in self.entries for a in row)

    def map(self, fn) -> "NCMatrix":
        return NCMatrix([[fn(a) for a in row] for row in self.entries])

    def trace(self) -> NCPoly:
        acc = NCPoly()
        for i in range(min(self.shape)):
            acc.iadd_scaled(self.entries[i][i])
        return acc

    def __eq__(self, other):
        if not isinstance(other, NCMatrix) or self.shape != other.shape:
            return False
        return all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))

    __hash__ = None

    def __repr__(self):
        return f"NCMatrix({self.shape[0]}x{self.shape[1]}, {self.term_count()} terms)"


def generating_matrix(N: int, pid: int) -> NCMatrix:
    """L(p) with entries l_i^j(p)."""
    return NCMatrix([[NCPoly.gen(letter(pid, i, j, N)) for j in range(N)] for i in range(N)])


def leg1(M: NCMatrix, N: int) -> NCMatrix:
    """M_1 = M (x) I on V (x) V."""
    if M.shape != (N, N):
        raise ValueError("leg1 expects an N x N matrix")
    out = NCMatrix.zeros(N * N)
    for x1 in range(N):
        for y1 in range(N):
            for x2 in range(N):
                out.entries[x1 * N + x2][y1 * N + x2] = M.entries[x1][y1].copy()
    return out


def trace_weighted(M: NCMatrix, W) -> NCPoly:
    """Tr(W . M) for a scalar N x N weight W (the R-trace when W = C)."""
    W = W.mat if isinstance(W, TensorOp) else np.asarray(W, dtype=object)
    N = W.shape[0]
    if M.shape != (N, N):
        raise ValueError("dimension mismatch")
    acc = NCPoly()
    for a in range(N):
        for b in range(N):
            if W[a, b]:
                acc.iadd_scaled(M.entries[b][a], W[a, b])
    return acc


def partial_trace2_weighted(M: NCMatrix, W) -> NCMatrix:
    """Tr over leg 2 of W_2 . M for an N^2 x N^2 matrix M."""
    W = W.mat if isinstance(W, TensorOp) else np.asarray(W, dtype=object)
    N = W.shape[0]
    if M.shape != (N * N, N * N):
        raise ValueError("dimension mismatch")
    out = NCMatrix.zeros(N)
    for i in range(N):
        for j in range(N):
            acc = NCPoly()
            for a in range(N):
                for b in range(N):
                    if W[a, b]:
                        acc.iadd_scaled(M.entries[i * N + b][j * N + a], W[a, b])
            out.entries[i][j] = acc
    return out


def nc_sandwich(A, M: NCMatrix, B, M2: NCMatrix | None = None) -> NCMatrix:
    """A . M_1 . B . M2_1 with scalar A, B on V (x) V and M, M2 placed on leg 1.

    ``M2=None`` stands for the identity.
    """
    N = M.shape[0]
    out = leg1(M, N).mul_scalar_left(A).mul_scalar_right(B)
    return out if M2 is None else out @ leg1(M2, N)


# --- exchange rules ---------------------------------------------------------


def relation_coefficients(A: TensorOp, B: TensorOp, C: TensorOp, D: TensorOp):
    """Coefficient matrices of A L1(u) B L1(v) and L1(v) C L1(u) D.

    Rows index the N^4 entries ((i1,i2),(j1,j2)); columns index monomials
    l_a^b(first) l_c^d(second) lexicographically by (a, b, c, d).  For the
    left side the first letter is at u; for the right side it is at v.
    """
    N = A.dim
    A4, B4, C4, D4 = (X.as_tensor() for X in (A, B, C, D))
    # T[i1,i2,a,b,c,j2] = sum_x A[(i1,i2),(a,x)] B[(b,x),(c,j2)]
    T = np.tensordot(A4, B4, axes=([3], [1]))
    left = np.empty((N,) * 8, dtype=object)
    left.fill(ZERO)
    Tl = T.transpose(0, 1, 5, 2, 3, 4)
    for d in range(N):
        left[:, :, d, :, :, :, :, d] = Tl
    # U[b,i2,c,d,j1,j2] = sum_z C[(b,i2),(c,z)] D[(d,z),(j1,j2)]
    U = np.tensordot(C4, D4, axes=([3], [1]))
    right = np.empty((N,) * 8, dtype=object)
    right.fill(ZERO)
    Ur = U.transpose(1, 4, 5, 0, 2, 3)
    for a in range(N):
        right[a, :, :, :, a, :, :, :] = Ur
    n4 = N**4
    return left.reshape(n4, n4), right.reshape(n4, n4)


@dataclass
class RewriteRule:
    """l_a^b(hi) l_c^d(lo) = sum X[(a,b,c,d),(e,f,g,h)] l_e^f(lo) l_g^h(hi)."""

    lo: ParamPoint
    hi: ParamPoint
    X: np.ndarray
    N: int
    _expand: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        N = self.N
        n2 = N * N
        lo_base = self.lo.id * n2
        hi_base = self.hi.id * n2
        for r in range(n2 * n2):
            hb, lb = divmod(r, n2)
            row = self.X[r]
            terms = tuple(
                ((lo_base + c // n2, hi_base + c % n2), row[c]) for c in range(n2 * n2) if row[c]
            )
            self._expand[(hi_base + hb, lo_base + lb)] = terms

    def expand(self, hi_letter: int, lo_letter: int):
        return self._expand[(hi_letter, lo_letter)]

    def as_operator(self) -> TensorOp:
        """X as a 4-leg operator, for dumping in the text format."""
        return TensorOp(self.X, self.N, 4)


def exchange_system(spec, u: ParamPoint, v: ParamPoint):
    """Relation coefficient matrices for the instance at (u, v)."""
    A, B, C, D = spec.factors(u.value, v.value)
    return relation_coefficients(A, B, C, D)


def build_exchange(spec, p_lo: ParamPoint, p_hi: ParamPoint, instance: str = "lo_hi") -> RewriteRule:
    """Rewrite rule moving l(p_lo) letters left of l(p_hi) letters.

    ``instance`` picks which ordered pair plays (u, v) in the defining
    relation: "lo_hi" uses (u, v) = (p_lo, p_hi), "hi_lo" the swapped one.
    """
    if p_lo.id == p_hi.id or p_lo.value == p_hi.value:
        raise ValueError("exchange needs two distinct points")
    if instance == "lo_hi":
        E_lh, E_hl = exchange_system(spec, p_lo, p_hi)
    elif instance == "hi_lo":
        E_hl, E_lh = exchange_system(spec, p_hi, p_lo)
    else:
        raise ValueError(f"unknown instance {instance!r}")
    try:
        X = linalg.solve(E_hl, E_lh)
    except linalg.SingularMatrixError:
        raise SpecialParameterError(
            f"exchange system singular at points {p_lo}, {p_hi}; resample"
        ) from None
    return RewriteRule(p_lo, p_hi, X, spec.N)


def reverse_exchange_matrix(spec, p_lo: ParamPoint, p_hi: ParamPoint, instance: str = "hi_lo") -> np.ndarray:
    """Matrix Y with m(lo,hi) = Y m(hi,lo) from the chosen relation instance."""
    if instance == "hi_lo":
        E_hl, E_lh = exchange_system(spec, p_hi, p_lo)
    else:
        E_lh, E_hl = exchange_system(spec, p_lo, p_hi)
    try:
        return linalg.solve(E_lh, E_hl)
    except linalg.SingularMatrixError:
        raise SpecialParameterError(f"reverse exchange singular at {p_lo}, {p_hi}") from None


class RuleSet:
    """Lazily built, cached rewrite rules for one algebra over one registry."""

    def __init__(self, spec, registry: PointRegistry):
        self.spec = spec
        self.N = spec.N
        self.registry = registry
        self._rules: dict[tuple[int, int], RewriteRule] = {}
        self._nf: dict[str, dict] = {"first": {}, "last": {}}
        self.forbidden: set[frozenset] = set()

    def rule(self, lo: int, hi: int) -> RewriteRule:
        key = (lo, hi)
        r = self._rules.get(key)
        if r is None:
            if frozenset(key) in self.forbidden:
                raise MissingRuleError(f"no exchange rule between points {lo} and {hi}")
            r = build_exchange(self.spec, self.registry[lo], self.registry[hi])
            self._rules[key] = r
        return r

    def forbid(self, a: int, b: int) -> None:
        """Mark a pair whose relation instance is singular (e.g. charge-shifted)."""
        self.forbidden.add(frozenset((a, b)))

    @property
    def rules(self):
        return dict(self._rules)

    def normal_word(self, word: tuple, strategy: str = "first") -> dict:
        memo = self._nf[strategy]
        hit = memo.get(word)
        if hit is not None:
            return hit
        n2 = self.N * self.N
        pids = [x // n2 for x in word]
        positions = [i for i in range(len(word) - 1) if pids[i] > pids[i + 1]]
        if not positions:
            result = {word: ONE}
        else:
            i = positions[0] if strategy == "first" else positions[-1]
            rule = self.rule(pids[i + 1], pids[i])
            result: dict = {}
            head, tail = word[:i], word[i + 2 :]
            for (a, b), coef in rule.expand(word[i], word[i + 1]):
                for w, c in self.normal_word(head + (a, b) + tail, strategy).items():
                    s = result.get(w, ZERO) + coef * c
                    if s:
                        result[w] = s
                    else:
                        result.pop(w, None)
        memo[word] = result
        return result


def normal_order(x, rules: RuleSet, strategy: str = "first"):
    """Normal form of an NCPoly (or entrywise for an NCMatrix)."""
    if isinstance(x, NCMatrix):
        return x.map(lambda p: normal_order(p, rules, strategy))
    out = NCPoly()
    for w, c in x.terms.items():
        out.iadd_scaled(NCPoly._raw(rules.normal_word(w, strategy)), c)
    return out


def is_normal(x: NCPoly, N: int) -> bool:
    n2 = N * N
    return all(all(a // n2 <= b // n2 for a, b in zip(w, w[1:])) for w in x.terms)


def confluence_defects(rules: RuleSet, p1: int, p2: int, p3: int, sample: int | None = None, seed: int = 0):
    """Words l(p3) l(p2) l(p1) (ids p1 < p2 < p3) whose two reduction paths differ.

    Path "first" starts by swapping the leading pair, path "last" by
    swapping the trailing pair.  Every word is checked unless ``sample``
    limits the check to a seeded random subset.
    """
    if not p1 < p2 < p3:
        raise ValueError("need p1 < p2 < p3")
    N = rules.N
    triples = list(itertools.product(range(N * N), repeat=3))
    if sample is not None and sample < len(triples):
        triples = random.Random(seed).sample(triples, sample)
    bad = []
    n2 = N * N
    for a, b, c in triples:
        w = (p3 * n2 + a, p2 * n2 + b, p1 * n2 + c)
        if rules.normal_word(w, "first") != rules.normal_word(w, "last"):
            bad.append(w)
    return bad, len(triples)

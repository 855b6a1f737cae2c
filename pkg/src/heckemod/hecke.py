"""The Hecke algebra H_n on the positive-permutation-braid basis.

Elements are sparse linear combinations of basis braids w_pi indexed by
permutations (0-indexed tuples, composed diagrammatically: strand starting
at position j ends at position pi[j]).  The quadratic relation is
sigma^2 = a(s - s^-1) sigma + a^2, and the Markov trace closes the braid in
the solid torus and evaluates it in the 3-sphere.

This module serves as an independent skein-level oracle for the quantum
dimensions, twists, and eigenvalues used elsewhere.
"""

from __future__ import annotations

from functools import lru_cache

from .diagrams import YoungDiagram
from .scalars import CycScalar, RingContext, ScalarError

MAX_STRANDS = 8


def _identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def perm_cycles(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    count = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        count += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
    return count


def perm_length(p: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


@lru_cache(maxsize=None)
def reduced_word(p: tuple[int, ...]) -> tuple[int, ...]:
    """Generator indices (0-indexed, left-to-right) with w_p = sigma_{i1}...sigma_{ik}."""
    q = list(p)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(q) - 1):
            if q[i] > q[i + 1]:
                # w_p = sigma_i * w_q' where q' has positions i, i+1 swapped
                word.append(i)
                q[i], q[i + 1] = q[i + 1], q[i]
                changed = True
    return tuple(word)


class HeckeElement:
    """Sparse linear combination of positive permutation braids in H_n."""

    __slots__ = ("n", "ring", "terms")

    def __init__(self, n: int, ring: RingContext, terms: dict):
        if n > MAX_STRANDS:
            raise ScalarError(f"strand count {n} exceeds the cap {MAX_STRANDS}")
        self.n = n
        self.ring = ring
        self.terms = {p: c for p, c in terms.items() if not c.is_zero()}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def identity(n: int, ring: RingContext) -> "HeckeElement":
        return HeckeElement(n, ring, {_identity(n): ring.one()})

    @staticmethod
    def generator(i: int, n: int, ring: RingContext) -> "HeckeElement":
        """sigma_i (0-indexed, 0 <= i <= n-2)."""
        if not 0 <= i <= n - 2:
            raise ScalarError(f"generator index {i} out of range for {n} strands")
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        return HeckeElement(n, ring, {tuple(p): ring.one()})

    @staticmethod
    def basis(p: tuple[int, ...], ring: RingContext) -> "HeckeElement":
        return HeckeElement(len(p), ring, {tuple(p): ring.one()})

    # -- linear structure -----------------------------------------------------

    def _check(self, other: "HeckeElement") -> None:
        if self.n != other.n:
            raise ScalarError("mismatched strand counts")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms[p] + c if p in terms else c
        return HeckeElement(self.n, self.ring, terms)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-1) * other

    def __neg__(self) -> "HeckeElement":
        return (-1) * self

    def scale(self, c) -> "HeckeElement":
        if isinstance(c, int):
            c = self.ring.from_rational(c)
        return HeckeElement(self.n, self.ring,
                            {p: x * c for p, x in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, CycScalar)):
            return self.scale(c)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    def __hash__(self):  # pragma: no cover
        return hash((self.n, frozenset(self.terms.items())))

    # -- multiplication ---------------------------------------------------------

    def _times_generator(self, i: int) -> "HeckeElement":
        """Right multiplication by sigma_i."""
        ring = self.ring
        coef_mid = ring.a() * (ring.s() - ring.s(-1))
        coef_sq = ring.a(2)
        terms: dict = {}

        def add(p, c):
            if p in terms:
                terms[p] = terms[p] + c
            else:
                terms[p] = c

        for p, c in self.terms.items():
            # swap the values i and i+1 in the one-line notation
            q = tuple(i + 1 if x == i else i if x == i + 1 else x for x in p)
            if p.index(i) < p.index(i + 1):
                # lengths add
                add(q, c)
            else:
                add(p, c * coef_mid)
                add(q, c * coef_sq)
        return HeckeElement(self.n, ring, terms)

    def _times_generator_inverse(self, i: int) -> "HeckeElement":
        # sigma_i^-1 = a^-2 sigma_i - a^-1 (s - s^-1) 1
        ring = self.ring
        out = self._times_generator(i).scale(ring.a(-2))
        return out - self.scale(ring.a(-1) * (ring.s() - ring.s(-1)))

    def __mul__(self, other):
        if isinstance(other, (int, CycScalar)):
            return self.scale(other)
        self._check(other)
        result_terms: dict = {}
        ring = self.ring
        for q, cq in other.terms.items():
            acc = self.scale(cq)
            for i in reduced_word(q):
                acc = acc._times_generator(i)
            for p, c in acc.terms.items():
                if p in result_terms:
                    result_terms[p] = result_terms[p] + c
                else:
                    result_terms[p] = c
        return HeckeElement(self.n, ring, result_terms)

    # -- tensor embeddings ---------------------------------------------------

    def tensor_right(self, k: int) -> "HeckeElement":
        """x |-> x (x) 1_k on the last k strands."""
        n = self.n + k
        pad = tuple(range(self.n, n))
        return HeckeElement(n, self.ring, {p + pad: c for p, c in self.terms.items()})

    def tensor_left(self, k: int) -> "HeckeElement":
        """x |-> 1_k (x) x on the first k strands."""
        n = self.n + k
        head = tuple(range(k))
        return HeckeElement(n, self.ring,
                            {head + tuple(x + k for x in p): c
                             for p, c in self.terms.items()})

    # -- trace ---------------------------------------------------------------

    def partial_trace(self) -> "HeckeElement":
        """Close the last strand: the conditional expectation H_n -> H_{n-1}.

        On a basis braid: if the last strand is straight, a disjoint circle
        peels off with factor delta; otherwise w_pi factors with additive
        lengths as u * sigma_{n-2} * w_pi' with u, pi' in the subalgebra, and
        the Markov property gives a v^-1 * u * w_pi'.
        """
        ring = self.ring
        n = self.n
        if n == 0:
            raise ScalarError("nothing to close")
        delta = ring.quantum_integer(ring.N)
        curl = ring.a() * ring.v(-1)
        out = HeckeElement(n - 1, ring, {})
        for p, c in self.terms.items():
            if p[n - 1] == n - 1:
                out = out + (c * delta) * HeckeElement.basis(p[: n - 1], ring)
                continue
            k = p.index(n - 1)
            # u = s_k s_{k+1} ... s_{n-3} in S_{n-1}
            u = tuple(list(range(k)) + [n - 2] + list(range(k, n - 2)))
            rest = tuple(x for x in p if x != n - 1)
            prod = HeckeElement.basis(u, ring) * HeckeElement.basis(rest, ring)
            out = out + (c * curl) * prod
        return out

    def markov_trace(self) -> CycScalar:
        """Homflypt value of the closure of this element in the 3-sphere,
        obtained by closing the strands one at a time."""
        x = self
        while x.n > 0:
            x = x.partial_trace()
        return x.terms.get((), self.ring.zero())

    def __repr__(self) -> str:  # pragma: no cover
        return f"HeckeElement(n={self.n}, {len(self.terms)} terms)"


# ---------------------------------------------------------------------------
# braid words
# ---------------------------------------------------------------------------

def braid_word_to_element(word, n: int, ring: RingContext) -> HeckeElement:
    """Evaluate a braid word (1-indexed signed generator indices) in H_n."""
    x = HeckeElement.identity(n, ring)
    for w in word:
        i = abs(w) - 1
        if not 0 <= i <= n - 2:
            raise ScalarError(f"generator {w} out of range for {n} strands")
        x = x._times_generator(i) if w > 0 else x._times_generator_inverse(i)
    return x


def homfly_braid_closure(word, n: int, ring: RingContext) -> CycScalar:
    """Homflypt invariant of the blackboard-framed closure of a braid word."""
    return braid_word_to_element(word, n, ring).markov_trace()


# ---------------------------------------------------------------------------
# symmetrizers
# ---------------------------------------------------------------------------

def symmetrizer(n: int, kind: str, ring: RingContext) -> HeckeElement:
    """The deformed symmetrizer f_n (kind 'f') or antisymmetrizer g_n ('g')."""
    if kind not in ("f", "g"):
        raise ScalarError("kind must be 'f' or 'g'")
    if n < 1:
        raise ScalarError("symmetrizer needs n >= 1")
    for j in range(2, n + 1):
        if not ring.quantum_integer_invertible(j):
            raise ScalarError(f"[{j}] is not invertible; cannot build the symmetrizer")
    return _symmetrizer_cached(n, kind, ring)


def _f2(ring: RingContext) -> HeckeElement:
    inv2 = ring.quantum_integer(2).invert()
    one2 = HeckeElement.identity(2, ring)
    sig = HeckeElement.generator(0, 2, ring)
    return (ring.s(-1) * inv2) * one2 + (ring.a(-1) * inv2) * sig


def _symmetrizer_cached(n: int, kind: str, ring: RingContext) -> HeckeElement:
    key = (id(ring), n, kind)
    cache = _SYM_CACHE
    if key in cache:
        return cache[key]
    if n == 1:
        val = HeckeElement.identity(1, ring)
    elif kind == "f":
        prev = _symmetrizer_cached(n - 1, "f", ring)
        f2 = _f2(ring).tensor_left(n - 2)
        fp = prev.tensor_right(1)
        qn = ring.quantum_integer(n - 1)
        coef1 = (-1) * ring.quantum_integer(n - 2) * ring.quantum_integer(n).invert()
        coef2 = ring.quantum_integer(2) * qn * ring.quantum_integer(n).invert()
        val = coef1 * fp + coef2 * (fp * f2 * fp)
    else:
        prev = _symmetrizer_cached(n - 1, "g", ring)
        f2 = _f2(ring).tensor_right(n - 2)
        gp = prev.tensor_left(1)
        coef = ring.quantum_integer(2) * ring.quantum_integer(n - 1) \
            * ring.quantum_integer(n).invert()
        val = gp - coef * (gp * f2 * gp)
    cache[key] = val
    return val


_SYM_CACHE: dict = {}


def symmetrizer_explicit(n: int, kind: str, ring: RingContext) -> HeckeElement:
    """Length-generating-sum form, used as a cross-check for small n."""
    import itertools
    fact_inv = ring.quantum_factorial(n).invert()
    if kind == "f":
        front = ring.s(-(n * (n - 1) // 2))
        unit = (ring.a() * ring.s(-1)).invert()
    else:
        front = ring.s(n * (n - 1) // 2)
        unit = (ring.from_rational(-1) * ring.a() * ring.s()).invert()
    terms = {}
    for p in itertools.permutations(range(n)):
        terms[p] = fact_inv * front * unit ** perm_length(p)
    return HeckeElement(n, ring, terms)


# ---------------------------------------------------------------------------
# Jucys-Murphy elements and path idempotents
# ---------------------------------------------------------------------------

def jucys_murphy(k: int, n: int, ring: RingContext) -> HeckeElement:
    """J_k = sigma_{k-1}...sigma_1 sigma_1...sigma_{k-1} (1-indexed k): the
    full positive curl of strand k around strands 1..k-1."""
    if not 1 <= k <= n:
        raise ScalarError("Jucys-Murphy index out of range")
    word = list(range(k - 1, 0, -1)) + list(range(1, k))
    return braid_word_to_element(word, n, ring)


class StandardTableau:
    """A standard tableau recorded as the sequence of cells added."""

    def __init__(self, cells: tuple[tuple[int, int], ...]):
        self.cells = cells

    @property
    def size(self) -> int:
        return len(self.cells)

    def shape(self) -> YoungDiagram:
        rows: dict[int, int] = {}
        for (i, _) in self.cells:
            rows[i] = rows.get(i, 0) + 1
        return YoungDiagram(tuple(rows[i] for i in sorted(rows)))

    def shape_at(self, k: int) -> YoungDiagram:
        return StandardTableau(self.cells[:k]).shape() if k else YoungDiagram(())

    def __repr__(self) -> str:  # pragma: no cover
        return f"StandardTableau({self.cells})"

    def __eq__(self, other):
        return isinstance(other, StandardTableau) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)


def addable_cells(lam: YoungDiagram) -> list[tuple[int, int]]:
    out = []
    for i in range(lam.num_rows + 1):
        j = lam.row(i)
        if i == 0 or lam.row(i - 1) > j:
            out.append((i, j))
    return out


def standard_tableaux(n: int) -> list[StandardTableau]:
    """All standard tableaux with n cells, over all shapes of size n."""
    result: list[StandardTableau] = []

    def rec(cells: list):
        if len(cells) == n:
            result.append(StandardTableau(tuple(cells)))
            return
        shape = StandardTableau(tuple(cells)).shape()
        for c in addable_cells(shape):
            cells.append(c)
            rec(cells)
            cells.pop()

    rec([])
    return result


def standard_tableaux_of_shape(lam: YoungDiagram) -> list[StandardTableau]:
    return [t for t in standard_tableaux(lam.size) if t.shape() == lam]


def path_idempotent(t: StandardTableau, ring: RingContext,
                    n: int | None = None) -> HeckeElement:
    """Minimal idempotent of H_n attached to a standard tableau, built by
    Lagrange interpolation on the Jucys-Murphy eigenvalues a^(2(k-1)) s^(2 cn)."""
    size = t.size
    n = size if n is None else n
    p = HeckeElement.identity(n, ring)
    for k in range(2, size + 1):
        prev_shape = t.shape_at(k - 1)
        my_cell = t.cells[k - 1]
        my_eig = ring.zeta((2 * (k - 1) * ring.a_exp
                            + 2 * (my_cell[1] - my_cell[0]) * ring.s_exp) % ring.M)
        jk = jucys_murphy(k, n, ring)
        for (i, j) in addable_cells(prev_shape):
            if (i, j) == my_cell:
                continue
            eig = ring.zeta((2 * (k - 1) * ring.a_exp
                             + 2 * (j - i) * ring.s_exp) % ring.M)
            gap = my_eig - eig
            if gap.is_zero():
                raise ScalarError(
                    f"coincident interpolation eigenvalues at contents "
                    f"{my_cell[1] - my_cell[0]} and {j - i} (step {k})")
            p = p * (jk - eig * HeckeElement.identity(n, ring)).scale(gap.invert())
    return p


def central_idempotent(lam: YoungDiagram, n: int, ring: RingContext) -> HeckeElement:
    """z_lambda = sum of the path idempotents of shape lambda."""
    total = HeckeElement(n, ring, {})
    for t in standard_tableaux_of_shape(lam):
        total = total + path_idempotent(t, ring, n)
    return total


def full_twist(n: int, ring: RingContext) -> HeckeElement:
    """(sigma_1 ... sigma_{n-1})^n."""
    word = list(range(1, n)) * n
    return braid_word_to_element(word, n, ring)


# ---------------------------------------------------------------------------
# Young quasi-idempotents
# ---------------------------------------------------------------------------

def _column_to_row_permutation(lam: YoungDiagram) -> tuple[int, ...]:
    """Permutation sending column-reading positions to row-reading positions."""
    cells_row = lam.cells()  # row-reading order
    cells_col = sorted(cells_row, key=lambda c: (c[1], c[0]))
    row_index = {c: k for k, c in enumerate(cells_row)}
    return tuple(row_index[c] for c in cells_col)


def young_quasi_idempotent(lam: YoungDiagram, ring: RingContext) -> HeckeElement:
    """The row/column sandwich with y~^2 = [hl(lambda)] y~ where [hl] is the
    product of the quantum hook lengths."""
    n = lam.size
    ring_one = HeckeElement.identity(n, ring)
    # row blocks: [lam_i]! f_{lam_i} placed on consecutive row positions
    F = ring_one
    offset = 0
    for r in lam.rows:
        blk = ring.quantum_factorial(r) * symmetrizer(r, "f", ring)
        F = F * _embed(blk, offset, n, ring)
        offset += r
    # column blocks in column-reading coordinates, conjugated into row coords
    cols = lam.transpose().rows
    G = ring_one
    offset = 0
    for c in cols:
        blk = ring.quantum_factorial(c) * symmetrizer(c, "g", ring)
        G = G * _embed(blk, offset, n, ring)
        offset += c
    wc = _column_to_row_permutation(lam)
    w = HeckeElement.basis(wc, ring)
    w_inv = braid_word_to_element([-(i + 1) for i in reversed(reduced_word(wc))], n, ring)
    return F * (w_inv * G * w)


def _embed(x: HeckeElement, offset: int, n: int, ring: RingContext) -> HeckeElement:
    return x.tensor_left(offset).tensor_right(n - offset - x.n)


def quantum_hook_product(lam: YoungDiagram, ring: RingContext) -> CycScalar:
    total = ring.one()
    for (i, j) in lam.cells():
        total = total * ring.quantum_integer(lam.hook_length(i, j))
    return total

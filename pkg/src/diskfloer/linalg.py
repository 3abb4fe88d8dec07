"""Linear algebra over F2 and over F2[U].

F2 vectors and matrix rows are bit-packed python ints.  F2[U] polynomials
are also ints: bit k is the coefficient of U^k, so addition is XOR and
multiplication is carry-less.  F2[U] is Euclidean, which gives a Smith
normal form, homology over F2[U], and U-torsion orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence


# ---------------------------------------------------------------------------
# F2 matrices
# ---------------------------------------------------------------------------

class F2Matrix:
    """Rectangular matrix over F2; each row is a bitset over the columns.

    Viewed as a linear map F2^cols -> F2^rows, v -> M v.
    """

    def __init__(self, rows: int, cols: int, row_bits: Optional[List[int]] = None):
        self.rows = rows
        self.cols = cols
        self.row_bits = list(row_bits) if row_bits is not None else [0] * rows
        if len(self.row_bits) != rows:
            raise ValueError("row count mismatch")

    @staticmethod
    def from_entries(rows: int, cols: int, entries) -> "F2Matrix":
        m = F2Matrix(rows, cols)
        for r, c in entries:
            m.toggle(r, c)
        return m

    @staticmethod
    def identity(n: int) -> "F2Matrix":
        return F2Matrix(n, n, [1 << i for i in range(n)])

    def get(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError((r, c))
        return (self.row_bits[r] >> c) & 1

    def toggle(self, r: int, c: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError((r, c))
        self.row_bits[r] ^= 1 << c

    def column(self, c: int) -> int:
        v = 0
        for r in range(self.rows):
            if (self.row_bits[r] >> c) & 1:
                v |= 1 << r
        return v

    def columns(self) -> List[int]:
        return [self.column(c) for c in range(self.cols)]

    def apply(self, v: int) -> int:
        """Matrix-vector product; v is a bitset over the columns."""
        out = 0
        for r in range(self.rows):
            if bin(self.row_bits[r] & v).count("1") & 1:
                out |= 1 << r
        return out

    def matmul(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [self.apply(c) for c in other.columns()]
        return F2Matrix.from_columns(self.rows, cols)

    @staticmethod
    def from_columns(rows: int, cols: Sequence[int]) -> "F2Matrix":
        m = F2Matrix(rows, len(cols))
        for c, v in enumerate(cols):
            r = 0
            while v:
                if v & 1:
                    m.row_bits[r] |= 1 << c
                v >>= 1
                r += 1
        return m

    def is_zero(self) -> bool:
        return all(b == 0 for b in self.row_bits)

    def rank(self) -> int:
        return len(row_reduce(self.row_bits))

    def kernel_basis(self) -> List[int]:
        """Basis of ker(M) as bitsets over the columns, in reduced
        column-echelon form with pivots ordered by column index."""
        return _kernel(self.row_bits, self.cols)

    def solve(self, b: int) -> Optional[int]:
        """One solution x of M x = b, or None."""
        return _solve(self.row_bits, self.rows, self.cols, b)


def row_reduce(rows: Sequence[int]) -> List[int]:
    """Reduced basis of the span of the given bitset vectors."""
    basis: List[int] = []
    for v in rows:
        for b in basis:
            low = b & -b
            if v & low:
                v ^= b
        if v:
            basis.append(v)
    # full reduction
    basis.sort(key=lambda b: b & -b)
    for i, b in enumerate(basis):
        low = b & -b
        for j in range(len(basis)):
            if j != i and basis[j] & low:
                basis[j] ^= b
    return basis


def in_span(v: int, basis: Sequence[int]) -> bool:
    for b in row_reduce(list(basis)):
        low = b & -b
        if v & low:
            v ^= b
    return v == 0


def _kernel(row_bits: Sequence[int], cols: int) -> List[int]:
    # Gaussian elimination tracking column combinations.
    work = list(row_bits)
    combo = [1 << c for c in range(cols)]  # combo[c] tracks column c's origin
    # column echelon: operate on the transpose instead.
    colvecs = []
    n_rows = len(work)
    for c in range(cols):
        v = 0
        for r in range(n_rows):
            if (work[r] >> c) & 1:
                v |= 1 << r
        colvecs.append(v)
    pivots = {}  # pivot row -> column index into reduced list
    reduced: List[int] = []
    tracks: List[int] = []
    kernel: List[int] = []
    for c in range(cols):
        v, t = colvecs[c], combo[c]
        for rv, rt in zip(reduced, tracks):
            low = rv & -rv
            if v & low:
                v ^= rv
                t ^= rt
        if v == 0:
            kernel.append(t)
        else:
            reduced.append(v)
            tracks.append(t)
    # reduce kernel vectors against each other for determinism
    return row_reduce(kernel)


def _solve(row_bits: Sequence[int], rows: int, cols: int, b: int) -> Optional[int]:
    # Solve by eliminating on columns of the augmented transpose.
    reduced: List[int] = []
    tracks: List[int] = []
    for c in range(cols):
        v = 0
        for r in range(rows):
            if (row_bits[r] >> c) & 1:
                v |= 1 << r
        t = 1 << c
        for rv, rt in zip(reduced, tracks):
            low = rv & -rv
            if v & low:
                v ^= rv
                t ^= rt
        if v:
            reduced.append(v)
            tracks.append(t)
    x = 0
    for rv, rt in zip(reduced, tracks):
        low = rv & -rv
        if b & low:
            b ^= rv
            x ^= rt
    return x if b == 0 else None


# ---------------------------------------------------------------------------
# F2[U] polynomials as int bit masks
# ---------------------------------------------------------------------------

def pdeg(a: int) -> int:
    """Degree; -1 for the zero polynomial."""
    return a.bit_length() - 1


def pmul(a: int, b: int) -> int:
    res = 0
    shift = 0
    while b:
        if b & 1:
            res ^= a << shift
        b >>= 1
        shift += 1
    return res


def pdivmod(a: int, b: int):
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = pdeg(b)
    while pdeg(a) >= db:
        shift = pdeg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pdivmod(a, b)[1]
    return a


def is_u_power(a: int) -> bool:
    return a != 0 and (a & (a - 1)) == 0


# ---------------------------------------------------------------------------
# F2[U] matrices and Smith normal form
# ---------------------------------------------------------------------------

class UMatrix:
    """Rectangular matrix over F2[U]; entries are polynomial bit masks."""

    def __init__(self, rows: int, cols: int, entries: Optional[List[List[int]]] = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = [[0] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("entry shape mismatch")
            self.entries = [list(r) for r in entries]

    @staticmethod
    def identity(n: int) -> "UMatrix":
        m = UMatrix(n, n)
        for i in range(n):
            m.entries[i][i] = 1
        return m

    def copy(self) -> "UMatrix":
        return UMatrix(self.rows, self.cols, self.entries)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def matmul(self, other: "UMatrix") -> "UMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = UMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.entries[i]
            for k in range(self.cols):
                a = row[k]
                if not a:
                    continue
                orow = other.entries[k]
                for j in range(other.cols):
                    if orow[j]:
                        out.entries[i][j] ^= pmul(a, orow[j])
        return out

    def apply(self, v: Sequence[int]) -> List[int]:
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return [
            _xor_sum(pmul(self.entries[i][j], v[j]) for j in range(self.cols))
            for i in range(self.rows)
        ]

    def max_degree(self) -> int:
        return max((pdeg(e) for row in self.entries for e in row if e), default=-1)

    def to_f2(self) -> F2Matrix:
        """Reduce entries mod U (only valid when all entries are constants
        if strictness matters; here we simply take the constant term)."""
        m = F2Matrix(self.rows, self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                if self.entries[i][j] & 1:
                    m.toggle(i, j)
        return m


def _xor_sum(it) -> int:
    s = 0
    for x in it:
        s ^= x
    return s


@dataclass
class SnfResult:
    s: UMatrix
    p: UMatrix
    q: UMatrix
    p_inv: UMatrix
    q_inv: UMatrix
    diagonal: List[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len([d for d in self.diagonal if d])


def smith_normal_form(m: UMatrix) -> SnfResult:
    """Smith normal form over F2[U]: S = P m Q with P, Q invertible and
    diagonal entries d1 | d2 | ...

    Pivoting picks the nonzero entry of minimal degree, ties broken by
    (row, col) order, so the output is deterministic.
    """
    s = m.copy()
    p = UMatrix.identity(m.rows)
    p_inv = UMatrix.identity(m.rows)
    q = UMatrix.identity(m.cols)
    q_inv = UMatrix.identity(m.cols)

    def row_swap(i, j):
        s.entries[i], s.entries[j] = s.entries[j], s.entries[i]
        p.entries[i], p.entries[j] = p.entries[j], p.entries[i]
        for r in range(m.rows):
            p_inv.entries[r][i], p_inv.entries[r][j] = (
                p_inv.entries[r][j],
                p_inv.entries[r][i],
            )

    def col_swap(i, j):
        for r in range(s.rows):
            s.entries[r][i], s.entries[r][j] = s.entries[r][j], s.entries[r][i]
        for r in range(m.cols):
            q.entries[r][i], q.entries[r][j] = q.entries[r][j], q.entries[r][i]
        q_inv.entries[i], q_inv.entries[j] = q_inv.entries[j], q_inv.entries[i]

    def row_add(dst, src, f):
        # row_dst += f * row_src  (self-inverse over F2)
        for c in range(s.cols):
            s.entries[dst][c] ^= pmul(f, s.entries[src][c])
        for c in range(m.rows):
            p.entries[dst][c] ^= pmul(f, p.entries[src][c])
        for r in range(m.rows):
            p_inv.entries[r][src] ^= pmul(f, p_inv.entries[r][dst])

    def col_add(dst, src, f):
        for r in range(s.rows):
            s.entries[r][dst] ^= pmul(f, s.entries[r][src])
        for r in range(m.cols):
            q.entries[r][dst] ^= pmul(f, q.entries[r][src])
        for c in range(m.cols):
            q_inv.entries[src][c] ^= pmul(f, q_inv.entries[dst][c])

    t = 0
    n = min(s.rows, s.cols)
    while t < n:
        # locate minimal-degree nonzero entry in the trailing submatrix
        best = None
        for i in range(t, s.rows):
            for j in range(t, s.cols):
                e = s.entries[i][j]
                if e and (best is None or pdeg(e) < pdeg(s.entries[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        # clear row and column t
        dirty = False
        for i in range(t + 1, s.rows):
            if s.entries[i][t]:
                f, r = pdivmod(s.entries[i][t], s.entries[t][t])
                row_add(i, t, f)
                if r:
                    dirty = True
        for j in range(t + 1, s.cols):
            if s.entries[t][j]:
                f, r = pdivmod(s.entries[t][j], s.entries[t][t])
                col_add(j, t, f)
                if r:
                    dirty = True
        if dirty:
            continue
        # divisibility fix-up: pivot must divide everything below-right
        offender = None
        for i in range(t + 1, s.rows):
            for j in range(t + 1, s.cols):
                e = s.entries[i][j]
                if e and pdivmod(e, s.entries[t][t])[1]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1

    diag = [s.entries[i][i] for i in range(min(s.rows, s.cols))]
    return SnfResult(s, p, q, p_inv, q_inv, diag)


def u_solve(d: UMatrix, z: Sequence[int], snf: Optional[SnfResult] = None) -> Optional[List[int]]:
    """One solution w of d w = z over F2[U], or None."""
    snf = snf or smith_normal_form(d)
    y = snf.p.apply(list(z))
    u = [0] * d.cols
    for i in range(d.rows):
        di = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if di == 0:
            if y[i]:
                return None
        else:
            qt, r = pdivmod(y[i], di)
            if r:
                return None
            u[i] = qt
    return snf.q.apply(u)


def u_torsion_order(z: Sequence[int], d: UMatrix, snf: Optional[SnfResult] = None):
    """min{k >= 0 : U^k [z] = 0 in homology}, or None for infinite order.

    Requires z to be a cycle.
    """
    if any(d.apply(list(z))):
        raise ValueError("not a cycle")
    snf = snf or smith_normal_form(d)
    y = snf.p.apply(list(z))
    order = 0
    for i in range(d.rows):
        di = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if di == 0:
            if y[i]:
                return None
            continue
        if y[i] == 0:
            continue
        g = pgcd(di, y[i])
        h = pdivmod(di, g)[0]
        if h == 1:
            continue
        if not is_u_power(h):
            return None
        order = max(order, pdeg(h))
    return order


# ---------------------------------------------------------------------------
# Homology summaries
# ---------------------------------------------------------------------------

@dataclass
class HomologySummary:
    ring: str                      # "F2" or "F2U"
    free_rank: int
    torsion_orders: List[int]      # exponents k of F2[U]/U^k summands
    representatives: List[List[int]]  # cycle vectors (poly entries; F2: bits)
    torsion_divisors: List[int] = field(default_factory=list)


def f2_homology(d: Optional[F2Matrix], d_prev: Optional[F2Matrix] = None,
                dim: Optional[int] = None) -> HomologySummary:
    """Homology ker(d)/im(d_prev) of a complex of F2 vector spaces.

    When d is square with d*d = 0 and d_prev is omitted, d itself is used
    as the incoming differential (a single chain complex in one matrix).
    Raises ValueError if the maps do not compose to zero.
    """
    if d is None:
        if dim is None:
            raise ValueError("need a dimension when d is absent")
        d = F2Matrix(0, dim)
    if d_prev is None and d.rows == d.cols:
        if d.matmul(d).is_zero():
            d_prev = d
    if d_prev is not None:
        if d_prev.rows != d.cols:
            raise ValueError("shape mismatch between d and d_prev")
        if not d.matmul(d_prev).is_zero():
            raise ValueError("not a complex: d o d_prev != 0")
    kernel = d.kernel_basis()
    image = row_reduce(d_prev.columns()) if d_prev is not None else []
    reps = []
    span = list(image)
    for v in kernel:
        w = v
        for b in row_reduce(span):
            low = b & -b
            if w & low:
                w ^= b
        if w:
            span.append(w)
            reps.append(v)
    rank = len(kernel) - len(image)
    if rank != len(reps):
        raise AssertionError("homology rank bookkeeping broke")
    return HomologySummary(
        ring="F2",
        free_rank=rank,
        torsion_orders=[],
        representatives=[_bits_to_vec(v, d.cols) for v in reps],
    )


def _bits_to_vec(bits: int, n: int) -> List[int]:
    return [(bits >> i) & 1 for i in range(n)]


def vec_to_bits(vec: Sequence[int]) -> int:
    out = 0
    for i, e in enumerate(vec):
        if e & 1:
            out |= 1 << i
    return out


def u_homology(d: UMatrix) -> HomologySummary:
    """Homology of a square differential over F2[U] (d*d = 0) as an
    F2[U]-module: free rank, torsion divisors, and representatives."""
    if d.rows != d.cols:
        raise ValueError("differential must be square")
    if not d.matmul(d).is_zero():
        raise ValueError("not a complex: d^2 != 0")
    n = d.rows
    snf = smith_normal_form(d)
    rank = snf.rank
    # kernel basis: columns of Q past the rank
    kernel_cols = []
    for j in range(rank, n):
        kernel_cols.append([snf.q.entries[i][j] for i in range(n)])
    k = len(kernel_cols)
    # image generators in kernel coordinates: im d = P^{-1} (d_i e_i)
    kmat = UMatrix(n, k, [[kernel_cols[j][i] for j in range(k)] for i in range(n)])
    ksnf = smith_normal_form(kmat)
    img_coords = []
    for i in range(rank):
        gen = [pmul(snf.p_inv.entries[r][i], snf.diagonal[i]) for r in range(n)]
        coords = u_solve(kmat, gen, ksnf)
        if coords is None:
            raise AssertionError("image not inside kernel")
        img_coords.append(coords)
    if img_coords:
        rel = UMatrix(k, len(img_coords),
                      [[img_coords[j][i] for j in range(len(img_coords))]
                       for i in range(k)])
        rsnf = smith_normal_form(rel)
        divisors = rsnf.diagonal + [0] * (k - len(rsnf.diagonal))
        basis_change = rsnf.p_inv  # new basis of F2[U]^k
    else:
        divisors = [0] * k
        basis_change = UMatrix.identity(k)
    free_rank = 0
    torsion_orders = []
    torsion_divisors = []
    reps = []
    for i in range(k):
        div = divisors[i] if i < len(divisors) else 0
        if div != 0 and pdeg(div) == 0:
            continue  # unit divisor: trivial summand
        coord = [basis_change.entries[r][i] for r in range(k)]
        vec = kmat.apply(coord)
        if div == 0:
            free_rank += 1
            reps.append(vec)
        else:
            torsion_divisors.append(div)
            if is_u_power(div):
                torsion_orders.append(pdeg(div))
            reps.append(vec)
    return HomologySummary(
        ring="F2U",
        free_rank=free_rank,
        torsion_orders=sorted(torsion_orders),
        representatives=reps,
        torsion_divisors=torsion_divisors,
    )


def u_solve_degree_capped(d: UMatrix, z: Sequence[int], cap: int) -> Optional[List[int]]:
    """Solve d w = z with deg(w entries) < cap by an exact F2 linear system.

    Independent of the Smith-form route: the polynomial identity is expanded
    coefficient by coefficient.  Solvable-with-cap implies solvable; the
    converse holds once cap exceeds the degrees appearing in any solution.
    """
    n, m = d.rows, d.cols
    maxdeg = d.max_degree() + cap + 1
    n_eq_bits = n * (maxdeg + 1)

    def embed(poly: int, gen: int) -> int:
        out = 0
        k = 0
        while poly:
            if poly & 1:
                out |= 1 << (gen * (maxdeg + 1) + k)
            poly >>= 1
            k += 1
        return out

    cols = []
    for j in range(m):
        for s in range(cap):
            v = 0
            for i in range(n):
                e = d.entries[i][j]
                if e:
                    v ^= embed(e << s, i)
            cols.append(v)
    rhs = 0
    for i in range(n):
        rhs ^= embed(z[i], i)
    mat = F2Matrix.from_columns(n_eq_bits, cols)
    x = mat.solve(rhs)
    if x is None:
        return None
    w = [0] * m
    for j in range(m):
        for s in range(cap):
            if (x >> (j * cap + s)) & 1:
                w[j] ^= 1 << s
    return w

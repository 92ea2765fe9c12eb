"""Exact sparse Gaussian elimination over Q or F_p.

Matrices are lists of sparse rows (dict column -> raw value, Fraction for Q
and int residue for F_p).  Pivoting is first-nonzero in canonical order,
so kernels, solutions and reduced forms are deterministic: the same system
always yields byte-identical output downstream.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import FieldSpec


class FieldOps:
    """Raw-value arithmetic for one field, used inside elimination loops."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p = spec.characteristic
        if p == 0:
            self.zero = Fraction(0)
            self.one = Fraction(1)
            self.add = lambda a, b: a + b
            self.sub = lambda a, b: a - b
            self.mul = lambda a, b: a * b
            self.div = lambda a, b: a / b
            self.neg = lambda a: -a
        else:
            self.zero = 0
            self.one = 1
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.div = lambda a, b: a * pow(b, p - 2, p) % p
            self.neg = lambda a: -a % p


def rref(rows, ops: FieldOps):
    """Reduce sparse rows in place to reduced row echelon form.

    Returns the list of pivot columns, one per nonzero row; after the call
    rows[i] is the i-th echelon row (zero rows dropped).  Pivot selection:
    lowest column, then lowest original row index.
    """
    rows[:] = [dict(r) for r in rows if r]
    pivots = []
    done = 0
    cols = sorted({c for r in rows for c in r})
    for col in cols:
        pivot_i = None
        for i in range(done, len(rows)):
            if rows[i].get(col):
                pivot_i = i
                break
        if pivot_i is None:
            continue
        rows[done], rows[pivot_i] = rows[pivot_i], rows[done]
        piv = rows[done]
        inv = ops.div(ops.one, piv[col])
        if inv != ops.one:
            for c in list(piv):
                piv[c] = ops.mul(piv[c], inv)
        for i, row in enumerate(rows):
            if i == done:
                continue
            f = row.get(col)
            if not f:
                continue
            for c, v in piv.items():
                nv = ops.sub(row.get(c, ops.zero), ops.mul(f, v))
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        pivots.append(col)
        done += 1
        if done == len(rows):
            break
    rows[:] = [r for r in rows if r]
    rows.sort(key=lambda r: min(r))
    return pivots


def rank(rows, ops: FieldOps) -> int:
    work = [dict(r) for r in rows]
    return len(rref(work, ops))


def solve(columns, ncols: int, b, ops: FieldOps):
    """Solve sum_j x_j * columns[j] = b exactly.

    columns: list of sparse vectors (dict row -> value); b likewise.
    Returns the deterministic solution (free variables set to zero) as a
    list of raw values, or None when the system is infeasible.
    """
    aug = ncols  # index of the augmented column
    row_ids = sorted({r for col in columns for r in col} | set(b))
    rows = []
    for rid in row_ids:
        row = {}
        for j, col in enumerate(columns):
            v = col.get(rid)
            if v:
                row[j] = v
        v = b.get(rid)
        if v:
            row[aug] = v
        if row:
            rows.append(row)
    pivots = rref(rows, ops)
    if aug in pivots:
        return None
    x = [ops.zero] * ncols
    for row, col in zip(rows, pivots):
        x[col] = row.get(aug, ops.zero)
    return x


def nullspace(columns, ncols: int, ops: FieldOps):
    """Deterministic basis of {x : sum_j x_j columns[j] = 0}.

    One basis vector per free column, in ascending column order; the free
    coordinate is 1 and pivot coordinates are filled by back-substitution.
    """
    row_ids = sorted({r for col in columns for r in col})
    rows = []
    for rid in row_ids:
        row = {}
        for j, col in enumerate(columns):
            v = col.get(rid)
            if v:
                row[j] = v
        if row:
            rows.append(row)
    pivots = rref(rows, ops)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [ops.zero] * ncols
        vec[free] = ops.one
        for row, col in zip(rows, pivots):
            v = row.get(free)
            if v:
                vec[col] = ops.neg(v)
        basis.append(vec)
    return basis

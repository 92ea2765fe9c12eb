"""Normalized Hochschild cochains of the 6-dimensional category.

A cochain of length r and internal degree s is a degree-preserving map on
composable r-tuples of the non-identity generators {e1, f1, u, v}, valued
in elements of degree sum(deg inputs) + s (outputs may involve e0, f0).
Length 0 cochains assign one element of Hom(x,x)^s to each object x.

Degrees are shifted throughout: ||phi|| = r + s - 1, ||a|| = deg(a) - 1.
The circle product

    (phi o psi)(a_...) = sum_n (-1)^{||psi|| eps_n} phi(..., psi(window), ...)

makes [phi, psi] = phi o psi - (-1)^{||phi|| ||psi||} psi o phi a graded
Lie bracket, and the coboundary is bracketing with the product:

    delta(phi) = mu2 o phi - (-1)^{||phi||} phi o mu2.

Expanded, this is exactly the seven-term formula used for the order-6
obstruction check (at r = 5), which is how the sign convention is pinned.
"""

from __future__ import annotations

from .linalg import FieldOps, nullspace, rank, solve
from .quiver import AInfStructure, Element, ZERO
from .scalars import FieldSpec, Scalar


class Cochain:
    """Sparse normalized cochain: table maps tuple keys (or object names at
    r = 0) to Elements; absent keys mean zero."""

    __slots__ = ("r", "s", "table")

    def __init__(self, r: int, s: int, table=None):
        self.r = r
        self.s = s
        self.table = {k: v for k, v in (table or {}).items() if not v.is_zero()}

    @property
    def shifted_degree(self) -> int:
        return (self.r + self.s - 1) % 2

    def value(self, key) -> Element:
        return self.table.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self.table

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.r, self.s) != (other.r, other.s):
            raise ValueError("cochain bidegrees differ")
        out = dict(self.table)
        for k, v in other.table.items():
            out[k] = out[k] + v if k in out else v
        return Cochain(self.r, self.s, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.r, self.s, {k: -v for k, v in self.table.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c: Scalar) -> "Cochain":
        return Cochain(self.r, self.s, {k: v.scale(c) for k, v in self.table.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and (self.r, self.s) == (other.r, other.s)
            and self.table == other.table
        )

    def __repr__(self):
        return f"Cochain(r={self.r}, s={self.s}, {len(self.table)} entries)"


def check_normalized(phi: Cochain, alg: AInfStructure):
    cat = alg.cat
    for key, el in phi.table.items():
        names = key if phi.r else ()
        for n in names:
            if cat.is_identity_component(n):
                raise ValueError(f"cochain not normalized: key {key}")
        if phi.r:
            want = sum(cat.deg(n) for n in names) + phi.s
            for g in el.terms:
                if cat.deg(g) != want:
                    raise ValueError(f"cochain not degree-preserving at {key}")


def mu_cochain(alg: AInfStructure, d: int) -> Cochain:
    """The arity-d structure map as a cochain in CC^2(A,A)^{2-d}."""
    table = {}
    cat = alg.cat
    for names, el in alg.tables.get(d, {}).items():
        if any(cat.is_identity_component(n) for n in names):
            if d >= 3:
                raise ValueError(f"mu^{d} not normalized at {names}")
            continue
        table[names] = el
    return Cochain(d, 2 - d, table)


def euler_cochain(alg: AInfStructure) -> Cochain:
    """Degree derivation e(x) = deg(x) x, a length-1 cocycle of degree 0."""
    table = {}
    for n in alg.cat.nonidentity_generators():
        d = alg.cat.deg(n)
        if d:
            table[(n,)] = Element.single(n, alg.spec.scalar(d))
    return Cochain(1, 0, table)


def _insert_eval(phi: Cochain, head, el: Element, tail) -> Element:
    """phi(head + (el,) + tail), multilinear in the inserted element."""
    acc = ZERO
    for g, c in el.terms.items():
        val = phi.table.get(head + (g,) + tail)
        if val is not None:
            acc = acc + val.scale(c)
    return acc


def gerst_compose(phi: Cochain, psi: Cochain, alg: AInfStructure) -> Cochain:
    """Circle product with shifted signs; both factors of length >= 1."""
    if phi.r < 1 or psi.r < 1:
        raise ValueError("circle product needs length >= 1 factors")
    cat = alg.cat
    r_out = phi.r + psi.r - 1
    s_out = phi.s + psi.s
    sign_flip = psi.shifted_degree == 1
    out = {}
    gens = cat.nonidentity_generators()
    for t in cat.tuples(r_out, gens):
        degs = [cat.deg(n) for n in t]
        acc = ZERO
        eps = 0
        for n in range(phi.r):
            lo = r_out - n - psi.r
            window = t[lo: r_out - n]
            inner = psi.table.get(window)
            if inner is not None:
                term = _insert_eval(phi, t[:lo], inner, t[r_out - n:])
                if not term.is_zero():
                    if sign_flip and eps % 2:
                        term = -term
                    acc = acc + term
            if n < r_out:
                eps += degs[r_out - 1 - n] - 1
        if not acc.is_zero():
            out[t] = acc
    return Cochain(r_out, s_out, out)


def gerstenhaber(phi: Cochain, psi: Cochain, alg: AInfStructure) -> Cochain:
    """[phi, psi] = phi o psi - (-1)^{||phi|| ||psi||} psi o phi."""
    a = gerst_compose(phi, psi, alg)
    b = gerst_compose(psi, phi, alg)
    if phi.shifted_degree and psi.shifted_degree:
        return a + b
    return a - b


def coboundary(phi: Cochain, alg: AInfStructure) -> Cochain:
    """Hochschild differential delta(phi) = [mu^2, phi]."""
    cat, spec = alg.cat, alg.spec
    r, s = phi.r, phi.s
    gens = cat.nonidentity_generators()
    flip_phi = phi.shifted_degree == 1
    out = {}
    for t in cat.tuples(r + 1, gens):
        acc = ZERO
        if r == 0:
            src = cat.source(t[0])
            tgt = cat.target(t[0])
            v = phi.table.get(src)
            if v is not None:
                acc = acc + alg.evaluate_elements(2, [Element.single(t[0], spec.one()), v])
            v = phi.table.get(tgt)
            if v is not None:
                term = alg.evaluate_elements(2, [v, Element.single(t[0], spec.one())])
                if flip_phi and (cat.deg(t[0]) - 1) % 2:
                    term = -term
                acc = acc + term
        else:
            v = phi.table.get(t[1:])
            if v is not None:
                acc = acc + alg.evaluate_elements(2, [Element.single(t[0], spec.one()), v])
            v = phi.table.get(t[:-1])
            if v is not None:
                term = alg.evaluate_elements(2, [v, Element.single(t[-1], spec.one())])
                if flip_phi and (cat.deg(t[-1]) - 1) % 2:
                    term = -term
                acc = acc + term
            # minus (-1)^{||phi||} (phi o mu2)
            eps = 0
            degs = [cat.deg(n) for n in t]
            for n in range(r):
                lo = r - 1 - n
                inner = alg.tables[2].get((t[lo], t[lo + 1]))
                if inner is not None:
                    term = _insert_eval(phi, t[:lo], inner, t[lo + 2:])
                    if not term.is_zero():
                        negate = (1 + (1 if flip_phi else 0) + eps) % 2
                        acc = acc + (-term if negate else term)
                eps += degs[r - n] - 1
        if not acc.is_zero():
            out[t] = acc
    return Cochain(r + 1, s, out)


# ---------------------------------------------------------------------------
# Bases, matrices and linear algebra over the cochain complex
# ---------------------------------------------------------------------------

def cochain_basis(alg: AInfStructure, r: int, s: int):
    """Deterministic ordered basis [(key, gen)] of CC of length r, degree s."""
    cat = alg.cat
    out = []
    if r == 0:
        for obj in cat.objects:
            for g in cat.gens_from(obj):
                gen = cat.generators[g]
                if gen.target == obj and gen.degree == s:
                    out.append((obj, g))
        return out
    gens = cat.nonidentity_generators()
    for t in cat.tuples(r, gens):
        want = sum(cat.deg(n) for n in t) + s
        src = cat.source(t[-1])
        tgt = cat.target(t[0])
        for g in cat.gens_from(src):
            gen = cat.generators[g]
            if gen.target == tgt and gen.degree == want:
                out.append((t, g))
    return out


def cochain_to_vector(phi: Cochain, basis) -> dict:
    index = {b: i for i, b in enumerate(basis)}
    vec = {}
    for key, el in phi.table.items():
        for g, c in el.terms.items():
            i = index.get((key, g))
            if i is None:
                raise ValueError(f"cochain entry ({key}, {g}) outside basis")
            vec[i] = c.value
    return vec


def vector_to_cochain(vec, basis, r: int, s: int, spec: FieldSpec) -> Cochain:
    table: dict = {}
    for i, b in enumerate(basis):
        v = vec[i] if not isinstance(vec, dict) else vec.get(i)
        if not v:
            continue
        key, g = b
        el = table.get(key, ZERO)
        table[key] = el + Element.single(g, Scalar(spec, v))
    return Cochain(r, s, table)


def delta_matrix(alg: AInfStructure, r: int, s: int):
    """Matrix of delta: CC(r,s) -> CC(r+1,s) in the deterministic bases.

    Returns (col_basis, row_basis, columns) with columns[j] a sparse dict
    {row index: raw value}; assembled row-wise from the same three-term
    expansion as coboundary(), so the two stay in lockstep (tested).
    """
    cat, spec = alg.cat, alg.spec
    ops = FieldOps(spec)
    col_basis = cochain_basis(alg, r, s)
    row_basis = cochain_basis(alg, r + 1, s)
    col_index = {b: i for i, b in enumerate(col_basis)}
    row_index = {b: i for i, b in enumerate(row_basis)}
    columns = [dict() for _ in col_basis]
    flip_phi = (r + s - 1) % 2 == 1
    mu2 = alg.tables[2]

    def add(j, i, value):
        cell = columns[j]
        new = ops.add(cell.get(i, ops.zero), value)
        if new:
            cell[i] = new
        else:
            cell.pop(i, None)

    gens = cat.nonidentity_generators()
    for t in cat.tuples(r + 1, gens):
        degs = [cat.deg(n) for n in t]
        if r == 0:
            slots = ((cat.source(t[0]), "right"), (cat.target(t[0]), "left"))
        else:
            slots = ((t[1:], "right"), (t[:-1], "left"))
        for key, side in slots:
            want = (sum(cat.deg(n) for n in key) if r else 0) + s
            src = cat.source(key[-1]) if r else key
            tgt = cat.target(key[0]) if r else key
            for h in cat.gens_from(src):
                gen = cat.generators[h]
                if gen.target != tgt or gen.degree != want:
                    continue
                j = col_index.get((key, h))
                if j is None:
                    continue
                if side == "right":
                    el = mu2.get((t[0], h), ZERO)
                    negate = False
                else:
                    el = mu2.get((h, t[-1]), ZERO)
                    negate = flip_phi and (degs[-1] - 1) % 2 == 1
                for g, c in el.terms.items():
                    i = row_index.get((t, g))
                    if i is not None:
                        add(j, i, ops.neg(c.value) if negate else c.value)
        if r >= 1:
            eps = 0
            for n in range(r):
                lo = r - 1 - n
                inner = mu2.get((t[lo], t[lo + 1]))
                if inner is not None:
                    head, tail = t[:lo], t[lo + 2:]
                    negate = (1 + (1 if flip_phi else 0) + eps) % 2 == 1
                    for g, c in inner.terms.items():
                        slot = head + (g,) + tail
                        want = sum(cat.deg(n2) for n2 in slot) + s
                        for h in cat.gens_from(cat.source(slot[-1])):
                            gen = cat.generators[h]
                            if gen.target != cat.target(slot[0]) or gen.degree != want:
                                continue
                            j = col_index.get((slot, h))
                            if j is None:
                                continue
                            i = row_index.get((t, h))
                            if i is not None:
                                add(j, i, ops.neg(c.value) if negate else c.value)
                eps += degs[r - n] - 1
    return col_basis, row_basis, columns


def hh_bar(spec: FieldSpec, r_max: int, alg: AInfStructure = None):
    """Bigraded Hochschild cohomology dimensions via the normalized bar
    complex and exact Gaussian elimination: {(r, s): dim}, zeros omitted."""
    from .quiver import preset_A

    alg = alg or preset_A(spec)
    ops = FieldOps(spec)
    dims = {}
    ranks: dict[tuple, int] = {}
    sizes: dict[tuple, int] = {}
    for r in range(0, r_max + 1):
        for s in range(-(r + 1), 2):
            cols, rows, matrix = delta_matrix(alg, r, s)
            sizes[(r, s)] = len(cols)
            ranks[(r, s)] = rank(matrix, ops) if cols and rows else 0
    for r in range(0, r_max + 1):
        for s in range(-(r + 1), 2):
            dim = sizes[(r, s)] - ranks[(r, s)] - ranks.get((r - 1, s), 0)
            if dim:
                dims[(r, s)] = dim
    return dims


def is_coboundary(phi: Cochain, alg: AInfStructure):
    """Exact solve of delta(nu) = phi.

    Returns the deterministic primitive nu, or None with the system being
    infeasible (rank certificate available via coboundary_system)."""
    if not coboundary(phi, alg).is_zero():
        raise ValueError("input is not a cocycle")
    cols, rows, matrix = delta_matrix(alg, phi.r - 1, phi.s)
    b = cochain_to_vector(phi, rows)
    x = solve(matrix, len(cols), b, FieldOps(alg.spec))
    if x is None:
        return None
    return vector_to_cochain(x, cols, phi.r - 1, phi.s, alg.spec)


def coboundary_system(phi: Cochain, alg: AInfStructure):
    """(rank A, rank [A|b]) for the system delta(nu) = phi; unequal ranks
    certify that phi is not a coboundary."""
    ops = FieldOps(alg.spec)
    cols, rows, matrix = delta_matrix(alg, phi.r - 1, phi.s)
    b = cochain_to_vector(phi, rows)
    rank_a = rank(matrix, ops)
    rank_ab = rank(matrix + [b], ops)
    return rank_a, rank_ab


def cocycle_space(alg: AInfStructure, r: int, s: int):
    """Deterministic basis of cocycles in CC(r,s) as Cochains."""
    cols, rows, matrix = delta_matrix(alg, r, s)
    vecs = nullspace(matrix, len(cols), FieldOps(alg.spec))
    return [vector_to_cochain(v, cols, r, s, alg.spec) for v in vecs]


def reference_cocycle(alg: AInfStructure, r: int, s: int) -> Cochain:
    """First deterministic cocycle whose class is nonzero in HH at (r,s);
    the fixed yardstick against which class coordinates are reported."""
    ops = FieldOps(alg.spec)
    cols, rows, matrix = delta_matrix(alg, r, s)
    kernel = nullspace(matrix, len(cols), ops)
    below_cols, below_rows, below = delta_matrix(alg, r - 1, s)
    for vec in kernel:
        target = {i: v for i, v in enumerate(vec) if v}
        if solve(below, len(below_cols), target, ops) is None:
            return vector_to_cochain(vec, cols, r, s, alg.spec)
    raise ValueError(f"HH at (r={r}, s={s}) vanishes; no reference cocycle")


def class_coordinate(phi: Cochain, reference: Cochain, alg: AInfStructure) -> Scalar:
    """Coordinate c with phi = c * reference + coboundary (HH cell must be
    1-dimensional for this to be well-posed, which is checked by caller)."""
    ops = FieldOps(alg.spec)
    cols, rows, matrix = delta_matrix(alg, phi.r - 1, phi.s)
    ref_vec = cochain_to_vector(reference, rows)
    b = cochain_to_vector(phi, rows)
    x = solve(matrix + [ref_vec], len(cols) + 1, b, ops)
    if x is None:
        raise ValueError("phi is not cohomologous to a multiple of the reference")
    return Scalar(alg.spec, x[-1])

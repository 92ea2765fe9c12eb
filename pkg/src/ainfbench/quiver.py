"""Graded quiver categories and sparse A-infinity structure tables.

Conventions, fixed once for the whole package:

* An input tuple is written (a_d, ..., a_1) left to right, a_1 innermost;
  it is composable when source(a_j) = target(a_{j+1}) for consecutive
  positions j, j+1 of the stored tuple (function-composition order).
* mu^d has degree 2 - d: every table entry satisfies
  deg(out) = sum(deg(inputs)) + 2 - d.
* The A-infinity relations carry the sign (-1)^{reduced degree of the
  untouched right tail}:

      sum_{m,n} (-1)^{eps_n} mu(a_d,...,mu^m(a_{n+m},...,a_{n+1}),...,a_1) = 0,
      eps_n = sum_{i<=n} (deg(a_i) - 1).

  This is the unique convention (up to global equivalence) under which the
  dg presets below satisfy the relations, minimal products relate to the
  composition product by mu^2(x,y) = (-1)^{deg y} (x o y), and the
  Hochschild coboundary of hochschild.py is bracketing with mu^2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import FieldSpec, Scalar, parse_scalar


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str
    degree: int


class Element:
    """Linear combination of generators sharing source, target and degree.

    Zero coefficients are pruned on construction; the zero element is the
    empty combination (its type is contextual).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    @staticmethod
    def single(name: str, coeff: Scalar) -> "Element":
        return Element({name: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g)
            out[g] = s + c if s is not None else c
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c: Scalar) -> "Element":
        if not c:
            return Element()
        return Element({g: v * c for g, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Element({self.terms!r})"


ZERO = Element()


class QuiverCategory:
    """Objects, graded generating morphisms, and designated identities.

    The identity of an object may be a single degree-0 generator or a
    formal combination of idempotents (as in the simplicial dg preset).
    """

    def __init__(self, objects, generators, identities):
        self.objects = list(objects)
        self.generators: dict[str, Generator] = {}
        for g in generators:
            if g.name in self.generators:
                raise ValueError(f"duplicate generator {g.name}")
            if g.source not in self.objects or g.target not in self.objects:
                raise ValueError(f"unknown object in generator {g.name}")
            self.generators[g.name] = g
        self.order = {name: i for i, name in enumerate(self.generators)}
        self.identities: dict[str, Element] = dict(identities)
        for obj, el in self.identities.items():
            for name in el.terms:
                g = self.generators[name]
                if g.degree != 0 or g.source != obj or g.target != obj:
                    raise ValueError(f"identity of {obj} uses invalid {name}")
        self._by_source = {o: [] for o in self.objects}
        for g in self.generators.values():
            self._by_source[g.source].append(g.name)
        id_names = set()
        for el in self.identities.values():
            id_names.update(el.terms)
        self._identity_components = id_names

    def deg(self, name: str) -> int:
        return self.generators[name].degree

    def source(self, name: str) -> str:
        return self.generators[name].source

    def target(self, name: str) -> str:
        return self.generators[name].target

    def gens_from(self, obj: str):
        return self._by_source[obj]

    def is_identity_component(self, name: str) -> bool:
        return name in self._identity_components

    def nonidentity_generators(self):
        return [n for n in self.generators if n not in self._identity_components]

    def composable(self, names) -> bool:
        gens = self.generators
        for j in range(len(names) - 1):
            if gens[names[j]].source != gens[names[j + 1]].target:
                return False
        return True

    def tuples(self, d: int, alphabet=None):
        """Composable tuples (a_d, ..., a_1) of length d, lazily, in the
        deterministic declaration order."""
        names = list(alphabet) if alphabet is not None else list(self.generators)
        by_target = {o: [] for o in self.objects}
        for n in names:
            by_target[self.generators[n].target].append(n)
        gens = self.generators

        def extend(prefix, remaining):
            if remaining == 0:
                yield prefix
                return
            for n in by_target[gens[prefix[-1]].source]:
                yield from extend(prefix + (n,), remaining - 1)

        for n in names:
            yield from extend((n,), d - 1)

    def sort_terms(self, el: Element):
        return sorted(el.terms.items(), key=lambda kv: self.order[kv[0]])


class AInfStructure:
    """Sparse mu^d tables over a quiver category, d <= truncation order N.

    tables[d] maps composable generator tuples to Elements; absent means 0.
    """

    def __init__(self, spec: FieldSpec, cat: QuiverCategory, truncation: int,
                 tables=None):
        self.spec = spec
        self.cat = cat
        self.truncation = truncation
        self.tables: dict[int, dict[tuple, Element]] = {}
        for d, table in (tables or {}).items():
            clean = {t: v for t, v in table.items() if not v.is_zero()}
            if clean:
                self.tables[d] = clean
        self.check_degrees()

    def check_degrees(self):
        """Degree and composability bookkeeping for every stored entry."""
        cat = self.cat
        for d, table in self.tables.items():
            if d > self.truncation:
                raise ValueError(f"table arity {d} beyond truncation {self.truncation}")
            for names, el in table.items():
                if len(names) != d:
                    raise ValueError(f"arity-{d} table holds tuple {names}")
                if not cat.composable(names):
                    raise ValueError(f"noncomposable tuple {names}")
                want = sum(cat.deg(n) for n in names) + 2 - d
                src = cat.source(names[-1])
                tgt = cat.target(names[0])
                for g in el.terms:
                    gen = cat.generators[g]
                    if gen.degree != want or gen.source != src or gen.target != tgt:
                        raise ValueError(
                            f"mu^{d}{names} -> {g}: expects degree {want}, "
                            f"{src}->{tgt}"
                        )

    def evaluate(self, d: int, names) -> Element:
        if d > self.truncation:
            raise ValueError(f"arity {d} beyond truncation {self.truncation}")
        names = tuple(names)
        if not self.cat.composable(names):
            raise ValueError(f"noncomposable tuple {names}")
        return self.tables.get(d, {}).get(names, ZERO)

    def evaluate_elements(self, d: int, elements) -> Element:
        """Multilinear extension of mu^d to a tuple of Elements."""
        table = self.tables.get(d)
        if table is None:
            return ZERO
        acc: dict[str, Scalar] = {}
        stack = [((), self.spec.one())]
        for el in elements:
            new = []
            for prefix, coeff in stack:
                for g, c in el.terms.items():
                    new.append((prefix + (g,), coeff * c))
            stack = new
            if not stack:
                return ZERO
        for names, coeff in stack:
            val = table.get(names)
            if val is None:
                continue
            for g, c in val.terms.items():
                s = acc.get(g)
                cc = c * coeff
                acc[g] = s + cc if s is not None else cc
        return Element(acc)

    def present_arities(self):
        return sorted(d for d, t in self.tables.items() if t)

    def relation_defect(self, names) -> Element:
        """Left-hand side of the A-infinity relation on one tuple."""
        d = len(names)
        cat = self.cat
        degs = [cat.deg(n) for n in names]
        # eps[n] = reduced degree of the last n inputs (a_1..a_n)
        eps = [0] * (d + 1)
        for n in range(1, d + 1):
            eps[n] = eps[n - 1] + degs[d - n] - 1
        acc = ZERO
        tables = self.tables
        for m in self.present_arities():
            if m > d:
                break
            k = d - m + 1
            outer = tables.get(k)
            if outer is None:
                continue
            inner_table = tables[m]
            for n in range(0, d - m + 1):
                window = names[d - n - m: d - n]
                inner = inner_table.get(window)
                if inner is None:
                    continue
                sign = -1 if eps[n] % 2 else 1
                head = names[: d - n - m]
                tail = names[d - n:]
                for g, c in inner.terms.items():
                    val = outer.get(head + (g,) + tail)
                    if val is None:
                        continue
                    coeff = c if sign > 0 else -c
                    acc = acc + val.scale(coeff)
        return acc

    def ainf_check(self, up_to: int):
        """Violated (arity, tuple) pairs of the A-infinity relations.

        Checks every composable tuple of generators (identities included)
        of length <= up_to; empty result means the relations hold there.
        """
        if up_to > self.truncation:
            raise ValueError("cannot check beyond truncation order")
        present = self.present_arities()
        bad = []
        for d in range(1, up_to + 1):
            pairs = [(m, d - m + 1) for m in present if m <= d and (d - m + 1) in present]
            if not pairs:
                continue
            for t in self.cat.tuples(d):
                if not self.relation_defect(t).is_zero():
                    bad.append((d, t))
        return bad

    def check_unital(self):
        """Strict unitality of mu^2 against the designated identities."""
        cat = self.cat
        for name, g in cat.generators.items():
            el = Element.single(name, self.spec.one())
            right = self.evaluate_elements(2, [el, cat.identities[g.source]])
            if right != el:
                raise AssertionError(f"mu2({name}, id) != {name}")
            left = self.evaluate_elements(2, [cat.identities[g.target], el])
            want = el if g.degree % 2 == 0 else -el
            if left != want:
                raise AssertionError(f"mu2(id, {name}) != (-1)^|x| {name}")

    def mu1_cohomology_dims(self):
        """Cohomology of (hom-spaces, mu^1) per (source, target, degree).

        Only meaningful for dg structures; used to confirm that a dg
        inclusion is a quasi-isomorphism by comparing dimension tables.
        """
        from .linalg import FieldOps, rank

        cat, spec = self.cat, self.spec
        ops = FieldOps(spec)
        dims = {}
        by_slot: dict[tuple, list[str]] = {}
        for n, g in cat.generators.items():
            by_slot.setdefault((g.source, g.target, g.degree), []).append(n)
        mu1 = self.tables.get(1, {})
        slots = sorted(by_slot, key=lambda k: (k[0], k[1], k[2]))
        for (src, tgt, deg), basis in by_slot.items():
            def d_rank(names_from, names_to):
                idx = {n: i for i, n in enumerate(names_to)}
                rows = []
                for n in names_from:
                    img = mu1.get((n,), ZERO)
                    rows.append({idx[g]: c.value for g, c in img.terms.items()})
                return rank(rows, ops)

            below = by_slot.get((src, tgt, deg - 1), [])
            here_rank = d_rank(basis, by_slot.get((src, tgt, deg + 1), []))
            below_rank = d_rank(below, basis) if below else 0
            dim = len(basis) - here_rank - below_rank
            if dim:
                dims[(src, tgt, deg)] = dim
        return {k: dims[k] for k in sorted(dims)}


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def _assoc_mul_A(x: str, y: str):
    """Composition product of the 6-dimensional algebra: x o y, y applied
    first.  Nonzero off-identity products are u o v = f1 and v o u = e1;
    length-3 paths vanish."""
    if x in ("e0", "f0"):
        return y
    if y in ("e0", "f0"):
        return x
    if (x, y) == ("u", "v"):
        return "f1"
    if (x, y) == ("v", "u"):
        return "e1"
    return None


def preset_A(spec: FieldSpec, truncation: int = 12) -> AInfStructure:
    """Minimal associative structure on the 6-dimensional two-object
    category: objects a, b; u: a->b of degree 1, v: b->a of degree 0,
    degree-1 loops e1 = vu and f1 = uv, identities e0, f0.  Only mu^2 is
    nonzero, with the twist mu^2(x,y) = (-1)^{deg y} (x o y)."""
    gens = [
        Generator("e0", "a", "a", 0),
        Generator("e1", "a", "a", 1),
        Generator("f0", "b", "b", 0),
        Generator("f1", "b", "b", 1),
        Generator("u", "a", "b", 1),
        Generator("v", "b", "a", 0),
    ]
    one = spec.one()
    cat = QuiverCategory(
        ["a", "b"], gens,
        {"a": Element.single("e0", one), "b": Element.single("f0", one)},
    )
    mu2 = {}
    for pair in cat.tuples(2):
        prod = _assoc_mul_A(*pair)
        if prod is None:
            continue
        sign = -one if cat.deg(pair[1]) % 2 else one
        mu2[pair] = Element.single(prod, sign)
    return AInfStructure(spec, cat, truncation, {2: mu2})


def _table(spec, cat, entries):
    out = {}
    for names, combo in entries:
        el = ZERO
        for coeff, g in combo:
            el = el + Element.single(g, spec.scalar(*coeff) if isinstance(coeff, tuple)
                                     else spec.scalar(coeff))
        out[tuple(names)] = el
    return out


def preset_C(spec: FieldSpec, truncation: int = 12) -> AInfStructure:
    """Eight-generator dg category quasi-isomorphic to the 6-dimensional
    category: hom(b,a) is resolved by v0, v1 (degree 0) and v01 (degree 1)
    with d v0 = -v01, d v1 = v01; everything else matches preset_A."""
    gens = [
        Generator("e0", "a", "a", 0),
        Generator("e1", "a", "a", 1),
        Generator("f0", "b", "b", 0),
        Generator("f1", "b", "b", 1),
        Generator("v0", "b", "a", 0),
        Generator("v1", "b", "a", 0),
        Generator("v01", "b", "a", 1),
        Generator("u01", "a", "b", 1),
    ]
    one = spec.one()
    cat = QuiverCategory(
        ["a", "b"], gens,
        {"a": Element.single("e0", one), "b": Element.single("f0", one)},
    )
    mu1 = _table(spec, cat, [
        (("v0",), [(-1, "v01")]),
        (("v1",), [(1, "v01")]),
    ])
    mu2 = _table(spec, cat, [
        (("e0", "e0"), [(1, "e0")]),
        (("e0", "e1"), [(-1, "e1")]),
        (("e1", "e0"), [(1, "e1")]),
        (("f0", "f0"), [(1, "f0")]),
        (("f0", "f1"), [(-1, "f1")]),
        (("f1", "f0"), [(1, "f1")]),
        (("v0", "f0"), [(1, "v0")]),
        (("v1", "f0"), [(1, "v1")]),
        (("v01", "f0"), [(1, "v01")]),
        (("v0", "f1"), [(-1, "v01")]),
        (("e0", "v0"), [(1, "v0")]),
        (("e0", "v1"), [(1, "v1")]),
        (("e1", "v1"), [(1, "v01")]),
        (("e0", "v01"), [(-1, "v01")]),
        (("f0", "u01"), [(-1, "u01")]),
        (("u01", "e0"), [(1, "u01")]),
        (("v0", "u01"), [(-1, "e1")]),
        (("u01", "v1"), [(1, "f1")]),
    ])
    return AInfStructure(spec, cat, truncation, {1: mu1, 2: mu2})


def preset_D(spec: FieldSpec, truncation: int = 12) -> AInfStructure:
    """Sixteen-generator simplicial dg model: each object's self-homs are
    cochains on a 3-vertex triangulated circle, the two circles glued over
    one intersection point.  Identities are the vertex sums x0+x1+x2 and
    y0+y1+y2; the smaller preset_C sits inside it as a dg subcategory."""
    def circle(p):  # vertices p0,p1,p2 and edges p01,p12,p02
        return [f"{p}0", f"{p}1", f"{p}2", f"{p}01", f"{p}12", f"{p}02"]

    gens = []
    for obj, p in (("a", "x"), ("b", "y")):
        for n in circle(p):
            gens.append(Generator(n, obj, obj, 0 if len(n) == 2 else 1))
    gens += [
        Generator("v0", "b", "a", 0),
        Generator("v1", "b", "a", 0),
        Generator("v01", "b", "a", 1),
        Generator("u01", "a", "b", 1),
    ]
    one = spec.one()
    cat = QuiverCategory(
        ["a", "b"], gens,
        {
            "a": Element({"x0": one, "x1": one, "x2": one}),
            "b": Element({"y0": one, "y1": one, "y2": one}),
        },
    )
    mu1_entries = []
    for p in ("x", "y"):
        mu1_entries += [
            ((f"{p}0",), [(-1, f"{p}01"), (-1, f"{p}02")]),
            ((f"{p}1",), [(1, f"{p}01"), (-1, f"{p}12")]),
            ((f"{p}2",), [(1, f"{p}12"), (1, f"{p}02")]),
        ]
    mu1_entries += [
        (("v0",), [(-1, "v01")]),
        (("v1",), [(1, "v01")]),
    ]
    mu2_entries = []
    for p in ("x", "y"):
        mu2_entries += [
            ((f"{p}0", f"{p}0"), [(1, f"{p}0")]),
            ((f"{p}1", f"{p}1"), [(1, f"{p}1")]),
            ((f"{p}2", f"{p}2"), [(1, f"{p}2")]),
            ((f"{p}0", f"{p}01"), [(-1, f"{p}01")]),
            ((f"{p}01", f"{p}1"), [(1, f"{p}01")]),
            ((f"{p}1", f"{p}12"), [(-1, f"{p}12")]),
            ((f"{p}12", f"{p}2"), [(1, f"{p}12")]),
            ((f"{p}0", f"{p}02"), [(-1, f"{p}02")]),
            ((f"{p}02", f"{p}2"), [(1, f"{p}02")]),
        ]
    mu2_entries += [
        (("v0", "y0"), [(1, "v0")]),
        (("v1", "y1"), [(1, "v1")]),
        (("v01", "y1"), [(1, "v01")]),
        (("v0", "y01"), [(-1, "v01")]),
        (("x0", "v0"), [(1, "v0")]),
        (("x1", "v1"), [(1, "v1")]),
        (("x01", "v1"), [(1, "v01")]),
        (("x0", "v01"), [(-1, "v01")]),
        (("y0", "u01"), [(-1, "u01")]),
        (("u01", "x1"), [(1, "u01")]),
        (("v0", "u01"), [(-1, "x01")]),
        (("u01", "v1"), [(1, "y01")]),
    ]
    mu1 = _table(spec, cat, mu1_entries)
    mu2 = _table(spec, cat, mu2_entries)
    return AInfStructure(spec, cat, truncation, {1: mu1, 2: mu2})


# ---------------------------------------------------------------------------
# Canonical text format
# ---------------------------------------------------------------------------

def format_element(el: Element, cat: QuiverCategory) -> str:
    if el.is_zero():
        return "0"
    return " + ".join(f"{c}*{g}" for g, c in cat.sort_terms(el))


def parse_element(text: str, cat: QuiverCategory, spec: FieldSpec) -> Element:
    text = text.strip()
    if text == "0":
        return ZERO
    out = ZERO
    for term in text.split(" + "):
        if "*" not in term:
            raise ValueError(f"malformed term {term!r} (expected c*gen)")
        c, g = term.split("*", 1)
        g = g.strip()
        if g not in cat.generators:
            raise ValueError(f"unknown generator {g!r}")
        out = out + Element.single(g, parse_scalar(c, spec))
    return out


def dump(struct: AInfStructure, extra_sections=None) -> str:
    """Canonical, byte-stable text form (load . dump == identity)."""
    cat = struct.cat
    lines = [f"FIELD {struct.spec}", f"TRUNCATION {struct.truncation}", "OBJECTS"]
    lines += cat.objects
    lines.append("GENERATORS")
    for g in cat.generators.values():
        lines.append(f"{g.name} {g.source} {g.target} {g.degree}")
    lines.append("IDENTITIES")
    for obj in cat.objects:
        lines.append(f"{obj} {format_element(cat.identities[obj], cat)}")
    for d in struct.present_arities():
        lines.append(f"MU{d}")
        table = struct.tables[d]
        for names in sorted(table, key=lambda t: [cat.order[n] for n in t]):
            lines.append(f"{' '.join(names)} -> {format_element(table[names], cat)}")
    for header, rows in (extra_sections or []):
        lines.append(header)
        lines += rows
    return "\n".join(lines) + "\n"


def _split_sections(text: str):
    """Sections as (name, [(line, lineno)], header lineno)."""
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head.isupper() and not line[0].isdigit():
            if head in ("FIELD", "TRUNCATION"):
                body = line.split(None, 1)
                if len(body) != 2:
                    raise ValueError(f"line {lineno}: {head} needs a value")
                sections.append((head, [(body[1], lineno)], lineno))
                current = None
                continue
            current = (head, [], lineno)
            sections.append(current)
        elif current is not None:
            current[1].append((line, lineno))
        else:
            raise ValueError(f"line {lineno}: content before any section header")
    return sections


def load(text: str) -> AInfStructure:
    struct, _ = load_with_extras(text)
    return struct


def load_with_extras(text: str):
    """Parse the canonical format; unknown sections (IOTA*, G*) returned raw.

    Errors carry the offending line number."""
    sections = _split_sections(text)
    by_name = {name: rows for name, rows, _ in sections}
    try:
        spec = FieldSpec.parse(by_name["FIELD"][0][0])
        truncation = int(by_name["TRUNCATION"][0][0])
        objects = [row for row, _ in by_name["OBJECTS"]]
        gen_rows = by_name["GENERATORS"]
        id_rows = by_name["IDENTITIES"]
    except KeyError as missing:
        raise ValueError(f"missing section {missing}") from None
    gens = []
    for row, lineno in gen_rows:
        parts = row.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: bad generator row {row!r}")
        try:
            gens.append(Generator(parts[0], parts[1], parts[2], int(parts[3])))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    cat = QuiverCategory(objects, gens, {})
    identities = {}
    for row, lineno in id_rows:
        try:
            obj, combo = row.split(None, 1)
            identities[obj] = parse_element(combo, cat, spec)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    cat = QuiverCategory(objects, gens, identities)
    tables = {}
    extras = []
    for name, rows, header_line in sections:
        if name in ("FIELD", "TRUNCATION", "OBJECTS", "GENERATORS", "IDENTITIES"):
            continue
        if name.startswith("MU") and name[2:].isdigit():
            d = int(name[2:])
            table = {}
            for row, lineno in rows:
                try:
                    lhs, _, rhs = row.partition("->")
                    names = tuple(lhs.split())
                    if len(names) != d:
                        raise ValueError(f"tuple {names} has wrong arity for {name}")
                    table[names] = parse_element(rhs, cat, spec)
                except ValueError as exc:
                    raise ValueError(f"line {lineno}: {exc}") from None
            tables[d] = table
        else:
            extras.append((name, [row for row, _ in rows]))
    try:
        struct = AInfStructure(spec, cat, truncation, tables)
    except ValueError as exc:
        raise ValueError(f"structure validation failed: {exc}") from None
    return struct, extras

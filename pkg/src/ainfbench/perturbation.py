"""Homological perturbation: minimal model transfer across a dg splitting.

The ambient dg category splits as an acyclic part plus a harmonic subspace
isomorphic to its cohomology.  Because the homotopy here has rank one and
its image multiplies to zero, the transfer collapses to the two-term
recursion

    I^d(a_d..a_1)  = sum_{0<m<d} T mu2(I^{d-m}(a_d..a_{m+1}), I^m(a_m..a_1))
    mu^d(a_d..a_1) = sum_{0<m<d} p mu2(I^{d-m}(a_d..a_{m+1}), I^m(a_m..a_1))

with I^1 the inclusion; no higher-tree terms are needed (generality is a
non-goal, rejected user splittings get a diagnostic instead).
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import AInfStructure, Element, QuiverCategory, ZERO, format_element
from .scalars import FieldSpec


def _apply_linear(mapping: dict, el: Element) -> Element:
    acc = ZERO
    for g, c in el.terms.items():
        img = mapping.get(g)
        if img is not None:
            acc = acc + img.scale(c)
    return acc


@dataclass
class SplittingData:
    """Inclusion/projection/homotopy data for ambient = acyclic + harmonic."""

    ambient: AInfStructure
    harmonic: QuiverCategory
    incl: dict          # harmonic generator -> ambient Element
    proj: dict          # ambient generator -> harmonic Element
    homotopy: dict      # ambient generator -> ambient Element, degree -1

    def check(self):
        """Homotopy identities, exact on the ambient basis:

        p o i = id,  i o p - id = mu1 T + T mu1,  T^2 = 0, T i = 0, p T = 0.
        """
        amb, spec = self.ambient, self.ambient.spec
        one = spec.one()
        for h in self.harmonic.generators:
            img = _apply_linear(self.proj, self.incl[h])
            if img != Element.single(h, one):
                raise ValueError(f"p(i({h})) != {h}")
        for g in amb.cat.generators:
            el = Element.single(g, one)
            ip = _apply_linear(self.incl, _apply_linear(self.proj, el))
            t_el = self.homotopy.get(g, ZERO)
            d_t = amb.evaluate_elements(1, [t_el]) if not t_el.is_zero() else ZERO
            t_d = _apply_linear(self.homotopy, amb.evaluate_elements(1, [el]))
            if ip - el != d_t + t_d:
                raise ValueError(f"i p - id != mu1 T + T mu1 on {g}")
            if not _apply_linear(self.homotopy, t_el).is_zero():
                raise ValueError(f"T^2 != 0 on {g}")
        for h, img in self.incl.items():
            if not _apply_linear(self.homotopy, img).is_zero():
                raise ValueError(f"T i != 0 on {h}")
        for g in amb.cat.generators:
            t_el = self.homotopy.get(g, ZERO)
            if not _apply_linear(self.proj, t_el).is_zero():
                raise ValueError(f"p T != 0 on {g}")


def preset_splitting_C(spec: FieldSpec) -> SplittingData:
    """The rank-one splitting of preset_C: harmonic basis e0, e1, f0, f1,
    u -> u01, v -> v0 + v1; acyclic complement spanned by v1, v01 with
    homotopy T(v01) = -v1 and T = 0 elsewhere."""
    from .quiver import preset_A, preset_C

    ambient = preset_C(spec)
    harmonic = preset_A(spec).cat
    one = spec.one()
    incl = {
        "e0": Element.single("e0", one),
        "e1": Element.single("e1", one),
        "f0": Element.single("f0", one),
        "f1": Element.single("f1", one),
        "u": Element.single("u01", one),
        "v": Element({"v0": one, "v1": one}),
    }
    proj = {
        "e0": Element.single("e0", one),
        "e1": Element.single("e1", one),
        "f0": Element.single("f0", one),
        "f1": Element.single("f1", one),
        "u01": Element.single("u", one),
        "v0": Element.single("v", one),
        # v1 and v01 project to zero
    }
    homotopy = {"v01": Element.single("v1", -one)}
    split = SplittingData(ambient, harmonic, incl, proj, homotopy)
    split.check()
    return split


@dataclass
class TransferResult:
    minimal: AInfStructure
    iota: dict  # arity -> {tuple: ambient Element}; arity 1 is the inclusion
    ambient_cat: QuiverCategory

    def dump(self) -> str:
        from .quiver import dump

        sections = []
        cat = self.minimal.cat
        for d in sorted(self.iota):
            if d == 1:
                continue
            rows = []
            table = self.iota[d]
            for names in sorted(table, key=lambda t: [cat.order[n] for n in t]):
                el = table[names]
                if el.is_zero():
                    continue
                rows.append(
                    f"{' '.join(names)} -> {format_element(el, self.ambient_cat)}"
                )
            if rows:
                sections.append((f"IOTA{d}", rows))
        return dump(self.minimal, sections)


def transfer(split: SplittingData, order: int) -> TransferResult:
    """Run the recursion through the given arity, exactly."""
    if order < 2:
        raise ValueError("transfer order must be >= 2")
    if sorted(split.ambient.present_arities()) not in ([1], [1, 2], [2]):
        raise ValueError("ambient structure must be dg (mu1, mu2 only)")
    amb = split.ambient
    spec = amb.spec
    cat = split.harmonic
    incl, proj, homotopy = split.incl, split.proj, split.homotopy

    iota: dict[int, dict] = {1: {}}
    for g in cat.generators:
        iota[1][(g,)] = incl[g]
    mu: dict[int, dict] = {}

    def blocks(d, names):
        for m in range(1, d):
            left = iota[d - m].get(names[: d - m])
            if left is None or left.is_zero():
                continue
            right = iota[m].get(names[d - m:])
            if right is None or right.is_zero():
                continue
            yield amb.evaluate_elements(2, [left, right])

    for d in range(2, order + 1):
        iota[d] = {}
        mu[d] = {}
        alphabet = None if d == 2 else cat.nonidentity_generators()
        for names in cat.tuples(d, alphabet):
            total = ZERO
            for prod in blocks(d, names):
                total = total + prod
            if total.is_zero():
                continue
            t_img = _apply_linear(homotopy, total)
            if not t_img.is_zero():
                iota[d][names] = t_img
            p_img = _apply_linear(proj, total)
            if not p_img.is_zero():
                mu[d][names] = p_img
        if not mu[d]:
            del mu[d]

    minimal = AInfStructure(spec, cat, order, mu)
    return TransferResult(minimal, iota, amb.cat)


def lemma_check(result: TransferResult, up_to: int):
    """Confirm the closed form of the transferred products:

    for d > 2 the only nonzero tables are
        mu^d(u, e1^(d-3), v, f1) = (-1)^(d+1) f1
        mu^d(u, e1^(d-2), v)     = (-1)^d     f1
    Returns (ok, mismatches)."""
    spec = result.minimal.spec
    one = spec.one()
    mismatches = []
    for d in range(3, up_to + 1):
        expected = {}
        if d >= 3:
            t1 = ("u",) + ("e1",) * (d - 3) + ("v", "f1")
            expected[t1] = Element.single("f1", one if (d + 1) % 2 == 0 else -one)
            t2 = ("u",) + ("e1",) * (d - 2) + ("v",)
            expected[t2] = Element.single("f1", one if d % 2 == 0 else -one)
        actual = result.minimal.tables.get(d, {})
        for t in set(expected) | set(actual):
            if expected.get(t, ZERO) != actual.get(t, ZERO):
                mismatches.append((d, t, actual.get(t, ZERO), expected.get(t, ZERO)))
    return not mismatches, mismatches

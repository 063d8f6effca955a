"""Serialization: the monomial grammar, JSON emitters and parsers, LaTeX.

Monomial grammar (stable across runs, round-trips through parse_monomial):

    1
    psi_1^2 * kappa_1
    bd[loop;m+=g](psi+^1 psi-^0)
    bd[tree;g1=0;t1=1,3;m+=g2](psi+^0 psi-^0)

Scalars serialize as [num, den]; cyclotomics as the exponent/coefficient
pair list; characters as {"group": ..., "values": [...]} ordered by class.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .cyclo import Cyclotomic
from .groups import FiniteGroup, Subgroup, build_group
from .hodge import ModuliContext
from .repring import VirtualCharacter
from .tautring import Monomial, RepTautClass, TautClass

__all__ = [
    "group_to_json",
    "character_to_json",
    "character_from_json",
    "monomial_to_string",
    "parse_monomial",
    "context_to_json",
    "context_from_json",
    "rep_class_to_json",
    "rep_class_from_json",
    "taut_class_to_json",
    "taut_class_from_json",
    "rep_class_to_latex",
    "taut_class_to_latex",
]


def scalar_to_json(c):
    if isinstance(c, Cyclotomic):
        return {"cyclotomic": c.to_pairs()}
    c = Fraction(c)
    return [c.numerator, c.denominator]


def scalar_from_json(doc):
    if isinstance(doc, dict):
        return Cyclotomic.from_pairs(doc["cyclotomic"])
    num, den = doc
    return Fraction(num, den)


def group_to_json(G: FiniteGroup):
    if G.spec and G.spec != "table":
        return G.spec
    return {"names": list(G.names), "table": [list(row) for row in G.table]}


def character_to_json(chi: VirtualCharacter) -> dict:
    return {
        "group": group_to_json(chi.group),
        "values": [v.to_pairs() for v in chi.values],
    }


def character_from_json(doc: dict, group: Optional[FiniteGroup] = None) -> VirtualCharacter:
    if group is None:
        group = build_group(doc["group"])
    return VirtualCharacter(group, [Cyclotomic.from_pairs(p) for p in doc["values"]])


def monomial_to_string(mon: Monomial, G: FiniteGroup) -> str:
    if mon.boundary is not None:
        gc, ap, am = mon.boundary
        name = G.names[gc.m_plus]
        if gc.kind == "loop":
            header = f"loop;m+={name}"
        else:
            tails = ",".join(str(t) for t in gc.tails1)
            header = f"tree;g1={gc.genus1};t1={tails};m+={name}"
        return f"bd[{header}](psi+^{ap} psi-^{am})"
    factors = []
    for i, e in mon.psis:
        factors.append(f"psi_{i}" + (f"^{e}" if e != 1 else ""))
    for a, e in mon.kappas:
        factors.append(f"kappa_{a}" + (f"^{e}" if e != 1 else ""))
    return " * ".join(factors) if factors else "1"


def parse_monomial(text: str, ctx: ModuliContext) -> Monomial:
    text = text.strip()
    if text == "1":
        return Monomial.build()
    if text.startswith("bd["):
        header, _, rest = text[3:].partition("](")
        if not rest.endswith(")"):
            raise ValueError(f"malformed boundary monomial {text!r}")
        plus_part, minus_part = rest[:-1].split(" ")
        ap = int(plus_part.removeprefix("psi+^"))
        am = int(minus_part.removeprefix("psi-^"))
        kind, _, tail = header.partition(";")
        if kind == "loop":
            name = tail.removeprefix("m+=")
            gc = ctx.find_graph("loop", ctx.g - 1, tuple(range(1, ctx.n + 1)),
                                ctx.group.index_of(name))
        elif kind == "tree":
            g1_part, _, tail = tail.partition(";")
            t1_part, _, m_part = tail.partition(";")
            g1 = int(g1_part.removeprefix("g1="))
            t1_text = t1_part.removeprefix("t1=")
            t1 = tuple(int(x) for x in t1_text.split(",")) if t1_text else ()
            name = m_part.removeprefix("m+=")
            gc = ctx.find_graph("tree", g1, t1, ctx.group.index_of(name))
        else:
            raise ValueError(f"unknown boundary kind {kind!r}")
        return Monomial.build(boundary=(gc, ap, am))
    psis, kappas = [], []
    for factor in text.split(" * "):
        base, _, exp = factor.partition("^")
        e = int(exp) if exp else 1
        if base.startswith("psi_"):
            psis.append((int(base[4:]), e))
        elif base.startswith("kappa_"):
            kappas.append((int(base[6:]), e))
        else:
            raise ValueError(f"unknown factor {factor!r}")
    return Monomial.build(psis=psis, kappas=kappas)


def context_to_json(ctx: ModuliContext, G0: Optional[Subgroup] = None) -> dict:
    doc = {
        "group": group_to_json(ctx.group),
        "g": ctx.g,
        "n": ctx.n,
        "monodromies": [ctx.group.names[x] for x in ctx.m],
        "truncation": ctx.trunc,
    }
    if G0 is not None:
        doc["g0"] = (
            "full"
            if G0.order == ctx.group.order
            else [ctx.group.names[x] for x in G0.elements]
        )
    return doc


def context_from_json(doc: dict) -> ModuliContext:
    G = build_group(doc["group"])
    m = [G.index_of(name) for name in doc["monodromies"]]
    return ModuliContext(G, doc["g"], doc["n"], m, doc.get("truncation"))


def _sorted_rep_terms(cls: RepTautClass):
    return cls.sorted_terms()


def rep_class_to_json(ctx: ModuliContext, cls: RepTautClass, G0=None, report=None) -> dict:
    doc = {
        "context": context_to_json(ctx, G0),
        "class": [
            {
                "monomial": monomial_to_string(mon, ctx.group),
                "character": character_to_json(chi),
            }
            for mon, chi in cls.sorted_terms()
        ],
    }
    if report is not None:
        doc["report"] = report
    return doc


def rep_class_from_json(doc: dict, ctx: Optional[ModuliContext] = None):
    if ctx is None:
        ctx = context_from_json(doc["context"])
    terms = {}
    for entry in doc["class"]:
        mon = parse_monomial(entry["monomial"], ctx)
        chi = character_from_json(entry["character"], ctx.group)
        terms[mon] = chi
    return ctx, RepTautClass(ctx.ring, ctx.group, terms)


def taut_class_to_json(ctx: ModuliContext, cls: TautClass, G0=None) -> dict:
    return {
        "context": context_to_json(ctx, G0),
        "class": [
            {
                "monomial": monomial_to_string(mon, ctx.group),
                "coefficient": scalar_to_json(c),
            }
            for mon, c in cls.sorted_terms()
        ],
    }


def taut_class_from_json(doc: dict, ctx: Optional[ModuliContext] = None):
    if ctx is None:
        ctx = context_from_json(doc["context"])
    terms = {}
    for entry in doc["class"]:
        mon = parse_monomial(entry["monomial"], ctx)
        terms[mon] = scalar_from_json(entry["coefficient"])
    return ctx, TautClass(ctx.ring, terms)


# LaTeX emitters

def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return f"{sign}\\tfrac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def scalar_to_latex(c) -> str:
    if isinstance(c, Cyclotomic):
        parts = []
        for q, coeff in c.terms:
            if q == 0:
                parts.append(_frac_latex(coeff))
            elif coeff == 1:
                parts.append(f"e({q})")
            else:
                parts.append(f"{_frac_latex(coeff)}\\,e({q})")
        return " + ".join(parts) if parts else "0"
    return _frac_latex(Fraction(c))


def monomial_to_latex(mon: Monomial, G: FiniteGroup) -> str:
    if mon.boundary is not None:
        gc, ap, am = mon.boundary
        name = G.names[gc.m_plus]
        if gc.kind == "loop":
            tag = f"\\mathrm{{loop}},m_+={name}"
        else:
            tails = ",".join(str(t) for t in gc.tails1)
            tag = f"\\mathrm{{tree}},g_1={gc.genus1},T_1=\\{{{tails}\\}},m_+={name}"
        return f"\\rho_{{[{tag}]*}}\\left(\\psi_+^{{{ap}}}\\psi_-^{{{am}}}\\right)"
    factors = []
    for i, e in mon.psis:
        factors.append(f"\\psi_{{{i}}}" + (f"^{{{e}}}" if e != 1 else ""))
    for a, e in mon.kappas:
        factors.append(f"\\kappa_{{{a}}}" + (f"^{{{e}}}" if e != 1 else ""))
    return "".join(factors) if factors else "1"


def character_to_latex(chi: VirtualCharacter) -> str:
    values = ",\\ ".join(scalar_to_latex(v) for v in chi.values)
    return f"\\left({values}\\right)"


def taut_class_to_latex(ctx: ModuliContext, cls: TautClass) -> str:
    if cls.is_zero():
        return "0"
    parts = []
    for mon, c in cls.sorted_terms():
        parts.append(f"{scalar_to_latex(c)}\\cdot {monomial_to_latex(mon, ctx.group)}")
    return " + ".join(parts)


def rep_class_to_latex(ctx: ModuliContext, cls: RepTautClass) -> str:
    if cls.is_zero():
        return "0"
    parts = []
    for mon, chi in cls.sorted_terms():
        parts.append(
            f"{character_to_latex(chi)}\\otimes {monomial_to_latex(mon, ctx.group)}"
        )
    return " + ".join(parts)


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))

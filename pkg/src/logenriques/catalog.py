"""Example catalog and the verification runner.

Every record in ``data/catalog.yaml`` names a construction and the
invariants claimed for it.  ``verify_record`` recomputes whatever the other
modules can compute (dimension formulas, canonical index, Euler
characteristic constraints, freeness criteria, singularity class) and
compares; geometric assertions are reported as not-checkable, never dropped.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Optional, Union

import yaml

from . import abelian, index, singular

__all__ = [
    "CatalogError",
    "ExampleRecord",
    "Status",
    "Check",
    "Verdict",
    "CatalogReport",
    "load_catalog",
    "verify_record",
    "run_catalog",
    "DEFAULT_CATALOG",
]

DEFAULT_CATALOG = "catalog.yaml"

TYPE_TAGS = {"CY", "IHS", "ISV", "PSV", "abelian-excluded"}


class CatalogError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_CHECKABLE = "not-checkable"


@dataclass(frozen=True)
class ExampleRecord:
    id: str
    section: str
    kind: str
    params: dict
    expected: dict  # field -> {"value": ..., "provenance": ...}
    claims: tuple[tuple[str, str], ...] = ()
    note: str = ""
    line: Optional[int] = None

    def expect(self, name: str, default: Any = None) -> Any:
        entry = self.expected.get(name)
        return default if entry is None else entry.get("value", default)

    def provenance(self, name: str) -> str:
        entry = self.expected.get(name) or {}
        return str(entry.get("provenance", ""))


@dataclass(frozen=True)
class Check:
    field: str
    got: Any
    expected: Any
    ok: bool
    provenance: str = ""


@dataclass
class Verdict:
    record_id: str
    section: str
    label: str
    checks: list[Check] = field(default_factory=list)
    not_checkable: list[tuple[str, str]] = field(default_factory=list)

    @property
    def status(self) -> Status:
        if any(not c.ok for c in self.checks):
            return Status.FAIL
        if not self.checks:
            return Status.NOT_CHECKABLE
        return Status.PASS

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def check(self, name: str, got: Any, expected: Any, provenance: str = "") -> None:
        self.checks.append(Check(name, got, expected, got == expected, provenance))

    def to_dict(self) -> dict:
        return {
            "id": self.record_id,
            "section": self.section,
            "label": self.label,
            "status": self.status.value,
            "checks": [
                {"field": c.field, "got": _jsonable(c.got), "expected": _jsonable(c.expected),
                 "ok": c.ok, "provenance": c.provenance}
                for c in self.checks
            ],
            "not_checkable": [{"field": f, "reason": r} for f, r in self.not_checkable],
        }


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# -- loading ---------------------------------------------------------------


class _LineLoader(yaml.SafeLoader):
    """SafeLoader that records the 1-based source line of every mapping."""

    def construct_mapping(self, node, deep=False):
        mapping = super().construct_mapping(node, deep=deep)
        mapping["__line__"] = node.start_mark.line + 1
        return mapping


def _strip_lines(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _strip_lines(v) for k, v in obj.items() if k != "__line__"}
    if isinstance(obj, list):
        return [_strip_lines(v) for v in obj]
    return obj


@dataclass(frozen=True)
class Catalog:
    records: tuple[ExampleRecord, ...]
    deformation_types: dict[str, tuple[singular.DeformationKind, int]]  # name -> (kind, b2)
    source: str


def _read_text(path: Union[str, Path, None]) -> tuple[str, str]:
    if path is None:
        ref = resources.files("logenriques") / "data" / DEFAULT_CATALOG
        return ref.read_text(encoding="utf-8"), str(ref)
    p = Path(path)
    return p.read_text(encoding="utf-8"), str(p)


def load_catalog(path: Union[str, Path, None] = None) -> Catalog:
    """Parse a catalog file; errors carry the offending line number."""
    text, source = _read_text(path)
    try:
        raw = yaml.load(text, Loader=_LineLoader)
    except yaml.MarkedYAMLError as exc:
        line = exc.problem_mark.line + 1 if exc.problem_mark else None
        raise CatalogError(f"{source}: {exc.problem}", line) from None
    if not isinstance(raw, dict) or "examples" not in raw:
        raise CatalogError(f"{source}: top level must be a mapping with an 'examples' list", 1)

    dtypes = {}
    for name, entry in (raw.get("deformation_types") or {}).items():
        if name == "__line__":
            continue
        try:
            kind = singular.DeformationKind.parse(name)
            b2 = int(entry["b2"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError(f"bad deformation type {name!r}: {exc}", _line(entry)) from None
        dtypes[kind.value] = (kind, b2)

    records = []
    seen = set()
    for item in raw["examples"] or []:
        rec = _parse_record(item)
        if rec.id in seen:
            raise CatalogError(f"duplicate record id {rec.id!r}", rec.line)
        seen.add(rec.id)
        records.append(rec)
    return Catalog(tuple(records), dtypes, source)


def _line(obj: Any) -> Optional[int]:
    return obj.get("__line__") if isinstance(obj, dict) else None


def _parse_record(item: Any) -> ExampleRecord:
    line = _line(item)
    if not isinstance(item, dict):
        raise CatalogError("each example must be a mapping", line)
    for key in ("id", "section", "construction", "expected"):
        if key not in item:
            raise CatalogError(f"record is missing {key!r}", line)
    cons = item["construction"]
    if not isinstance(cons, dict) or "kind" not in cons:
        raise CatalogError("construction must be a mapping with a 'kind'", _line(cons) or line)
    kind = cons["kind"]
    if kind not in VERIFIERS:
        raise CatalogError(f"unknown construction tag {kind!r}", _line(cons) or line)
    expected = _strip_lines(item["expected"])
    for name, entry in expected.items():
        if not isinstance(entry, dict) or "value" not in entry:
            raise CatalogError(f"expected.{name} must have a 'value'", _line(item["expected"]))
    tag = expected.get("type", {}).get("value")
    if tag is not None and tag not in TYPE_TAGS:
        raise CatalogError(f"unknown type tag {tag!r}", _line(item["expected"]))
    dim = expected.get("dim", {}).get("value")
    if tag in ("IHS", "ISV", "PSV") and isinstance(dim, int) and dim % 2:
        raise CatalogError(f"{tag}-type record with odd dimension {dim}", _line(item["expected"]))
    idx = expected.get("index", {}).get("value")
    if isinstance(idx, int) and idx < 2:
        raise CatalogError(f"index must be >= 2, got {idx}", _line(item["expected"]))
    claims = tuple(
        (str(c["field"]), str(c["reason"])) for c in _strip_lines(item.get("claims") or [])
    )
    params = {k: v for k, v in _strip_lines(cons).items() if k != "kind"}
    return ExampleRecord(
        id=str(item["id"]),
        section=str(item["section"]),
        kind=kind,
        params=params,
        expected=expected,
        claims=claims,
        note=str(item.get("note", "")),
        line=line,
    )


# -- verification ------------------------------------------------------------


def _frac_pair(pair) -> tuple[Fraction, Fraction]:
    return tuple(Fraction(str(c)) for c in pair)


def _index_value(res: index.IndexResult) -> Union[int, str]:
    return "trivial" if res.k_trivial else res.index


def _common(v: Verdict, rec: ExampleRecord, dim: int, idx: Union[int, str],
            cover_degree: Optional[int]) -> None:
    v.check("dim", dim, rec.expect("dim"), rec.provenance("dim"))
    if "index" in rec.expected:
        v.check("index", idx, rec.expect("index"), rec.provenance("index"))
    if cover_degree is not None and "cover_degree" in rec.expected:
        v.check("cover_degree", cover_degree, rec.expect("cover_degree"),
                rec.provenance("cover_degree"))
    tag = rec.expect("type")
    if tag == "CY":
        v.check("type-consistency", index.cy_type_constraints(dim).possible, True,
                "CY-type Enriques manifolds are even-dimensional")
    elif tag in ("IHS", "ISV", "PSV"):
        v.check("type-consistency", dim % 2 == 0, True, "symplectic varieties are even-dimensional")
    claimed = {f for f, _ in rec.claims}
    if tag is not None and "type" not in claimed:
        v.not_checkable.append(("type", f"{tag}-type of the cover is a geometric assertion"))
    v.not_checkable.extend(rec.claims)


def _verify_hilbert_of_enriques(rec, cat):
    n = int(rec.params["n"])
    v = Verdict(rec.id, rec.section, f"n={n}")
    v.check("n>=2", n >= 2, True, rec.provenance("dim"))
    cy = index.cy_type_constraints(2 * n)
    _common(v, rec, 2 * n, cy.index, cy.cover_degree)
    return [v]


def _template_auto(rec, mults, curve2):
    p = rec.params
    u = _frac_pair(p.get("u", ["0", "0"]))
    w = _frac_pair(p.get("v", ["0", "0"]))
    return abelian.SurfaceAffineAuto.make(
        p.get("curve1", "generic"), p.get("curve2", curve2), *mults, u=u, v=w
    )


def _verify_enriques_template(rec, mults, curve2, expected_case):
    n = int(rec.params["n"])
    f = _template_auto(rec, mults, curve2)
    v = Verdict(rec.id, rec.section, f"n={n}, f={f.describe()}")
    report = abelian.kummer_quotient_classification(abelian.KummerScenario(f, n))
    d = report.order
    if "m" in rec.params:
        v.check("n+1=d*m", n + 1, d * int(rec.params["m"]), rec.provenance("cover_degree"))
    v.check("etale: d | n+1", index.etale_chi_constraint(n, d), True,
            "Euler characteristic of an etale cyclic cover")
    idx = _index_value(report.index)
    v.check("index = d", idx, d, "coprime n and d give r = d")
    _common(v, rec, report.dim, idx, d)
    if report.freeness is not None:
        v.check("template", report.freeness.applicable_case.value, expected_case)
        if "free" in rec.expected:
            v.check("free", report.freeness.free, rec.expect("free"), rec.provenance("free"))
    else:
        v.check("template", None, expected_case)
    return [v]


def _verify_kummer_involution(rec, cat):
    return _verify_enriques_template(rec, ("-1", "1"), "generic", "involution")


def _verify_kummer_order3(rec, cat):
    return _verify_enriques_template(rec, ("1", "w"), "eisenstein", "order3")


def _verify_kummer_order4(rec, cat):
    return _verify_enriques_template(rec, ("1", "i"), "gauss", "order4")


def _verify_double_cover_of_ihs(rec, n, label):
    """Index-2 quotient of a 2n-dimensional symplectic variety by an involution."""
    v = Verdict(rec.id, rec.section, label)
    res = index.canonical_index(n, 2)
    _common(v, rec, 2 * n, _index_value(res), 2)
    return v


def _verify_enriques_involution_hilb(rec, cat):
    n = int(rec.params["n"])
    v = _verify_double_cover_of_ihs(rec, n, f"n={n}")
    v.check("n odd", n % 2, 1, rec.provenance("dim"))
    v.check("etale: 2 | n+1", index.etale_chi_constraint(n, 2), True,
            "Euler characteristic of an etale double cover")
    return [v]


def _verify_moduli_stable(rec, cat):
    v2 = int(rec.params["v2"])
    n = v2 // 2 + 1
    v = _verify_double_cover_of_ihs(rec, n, f"v^2={v2}")
    v.check("v^2 even", v2 % 2, 0, "lattice H*(S,Z) is even")
    v.check("chi odd", rec.params.get("chi_parity"), "odd",
            "a fixed stable sheaf would give chi = 2 chi', so chi odd forbids fixed points")
    v.check("etale: 2 | n+1", index.etale_chi_constraint(n, 2), True,
            "Euler characteristic of an etale double cover")
    return [v]


def _verify_quadric_intersection(rec, cat):
    n = int(rec.params["n"])
    v = Verdict(rec.id, rec.section, f"n={n}")
    # n+1 quadrics in P^{2n+1}
    dim = (2 * n + 1) - (n + 1)
    v.check("n even", n % 2, 0, rec.provenance("dim"))
    cy = index.cy_type_constraints(dim)
    _common(v, rec, dim, cy.index if cy.possible else None, cy.cover_degree)
    if rec.note:
        v.not_checkable.append(("note", rec.note))
    return [v]


def _verify_prime_quotient(rec, cat):
    p = rec.params
    kind = singular.DeformationKind.parse(str(p["type"]))
    n, prime, s = int(p["n"]), int(p["p"]), int(p["s"])
    a_list = tuple(int(a) for a in p.get("a") or ())
    t = int(p.get("t", len(a_list)))
    v = Verdict(rec.id, rec.section, f"{kind.value}, p={prime}, n={n}, s={s}")
    v.check("p admissible", prime in singular.admissible_prime_orders(kind), True,
            "prime orders of nonsymplectic automorphisms of the family")
    v.check("p does not divide n", n % prime != 0, True, rec.provenance("index"))
    model = singular.FixedComponentModel(prime, n, s, t, a_list)
    res = index.canonical_index(n, prime)
    _common(v, rec, 2 * n, _index_value(res), prime)
    cls = singular.classify_generator(model)
    v.check("singularity", cls.value, rec.expect("singularity"), rec.provenance("singularity"))
    v.check("age = closed form", singular.age(singular.weights_from_model(model)),
            singular.symbolic_age(prime, n, s), "sum of exponents over p")
    v.check("terminality conditions agree",
            singular.paper_terminality_conditions(prime, n, s),
            cls is singular.SingularityClass.TERMINAL)
    if kind.value in cat.deformation_types:
        b2 = cat.deformation_types[kind.value][1]
        v.check("b2(X) range nonempty", bool(singular.admissible_b2(b2, prime)), True,
                "1 <= b2(X) <= b2(Y)-2, b2(X) = b2(Y) mod p-1")
    else:
        v.not_checkable.append(("b2", f"no b2 configured for {kind.value}"))
    return [v]


def _verify_cubic_fourfold(rec, cat):
    p = rec.params
    n = int(p.get("n", 2))
    a_inv = Fraction(str(p["involution_angle"]))
    a_3 = Fraction(str(p["order3_angle"]))
    total = (a_inv + a_3) % 1
    d, k = total.denominator, total.numerator
    v = Verdict(rec.id, rec.section, f"F(C)/<iota o sigma>, n={n}")
    v.check("purely nonsymplectic", index.is_purely_nonsymplectic(d, k), True,
            "iota and sigma are both nonsymplectic of coprime orders")
    v.check("F(C)/iota is K-trivial", index.canonical_index(n, a_inv.denominator).k_trivial, True,
            "the involution quotient is a (singular) CY variety")
    res = index.canonical_index(n, d)
    _common(v, rec, 2 * n, _index_value(res), d)
    return [v]


def _residue_rows(rec, mults, curve2):
    rows = []
    table = {int(k): val for k, val in rec.expect("index_by_residue").items()}
    for n in rec.params["n_values"]:
        n = int(n)
        q = Fraction(1, n + 1)
        c1 = rec.params.get("curve1", "generic")
        c2 = rec.params.get("curve2", curve2)
        f = abelian.SurfaceAffineAuto.make(c1, c2, *mults, u=(q, 0), v=(0, q))
        report = abelian.kummer_quotient_classification(abelian.KummerScenario(f, n))
        d = report.order
        v = Verdict(rec.id, rec.section, f"n={n} (n = {n % d} mod {d})")
        v.check("dim", report.dim, 2 * n, rec.provenance("dim"))
        v.check("index", _index_value(report.index), table[n % d],
                rec.provenance("index_by_residue"))
        v.check("cover_degree", d, rec.expect("cover_degree"), rec.provenance("cover_degree"))
        v.check("purely nonsymplectic", index.is_purely_nonsymplectic(d, report.multiplier_exponent),
                True, "product of the two units is a primitive root")
        v.not_checkable.append(("type", "IHS type of Kum_n A is taken as known"))
        v.not_checkable.extend(rec.claims)
        rows.append(v)
    return rows


def _verify_kummer_order6(rec, cat):
    return _residue_rows(rec, ("-1", "w"), "eisenstein")


def _verify_kummer_order12(rec, cat):
    return _residue_rows(rec, ("i", "w"), "eisenstein")


def _verify_moduli_semistable(rec, cat):
    w2 = int(rec.params["w2"])
    n = w2 // 2 + 1
    v = _verify_double_cover_of_ihs(rec, n, f"w^2={w2}")
    v.check("w^2 = 0 mod 4", w2 % 4, 0, rec.provenance("dim"))
    if rec.params.get("chi_parity") == "odd":
        v.not_checkable.append(("free on regular locus", "follows from chi odd; geometric"))
    return [v]


def _verify_prym(rec, cat):
    g = int(rec.params["g"])
    n = 2 * g - 1
    v = _verify_double_cover_of_ihs(rec, n, f"g={g}")
    v.check("g >= 2", g >= 2, True, rec.provenance("dim"))
    return [v]


VERIFIERS: dict[str, Callable[[ExampleRecord, Catalog], list[Verdict]]] = {
    "hilbert-of-enriques": _verify_hilbert_of_enriques,
    "kummer-involution": _verify_kummer_involution,
    "enriques-involution-hilb": _verify_enriques_involution_hilb,
    "moduli-stable": _verify_moduli_stable,
    "quadric-intersection": _verify_quadric_intersection,
    "kummer-order3": _verify_kummer_order3,
    "kummer-order4": _verify_kummer_order4,
    "prime-quotient": _verify_prime_quotient,
    "cubic-fourfold-order3": _verify_cubic_fourfold,
    "kummer-order6": _verify_kummer_order6,
    "kummer-order12": _verify_kummer_order12,
    "moduli-semistable": _verify_moduli_semistable,
    "prym": _verify_prym,
}


def verify_record(rec: ExampleRecord, catalog: Optional[Catalog] = None) -> list[Verdict]:
    """Recompute a record's invariants; one verdict per row it expands to."""
    if rec.kind not in VERIFIERS:
        raise CatalogError(f"unknown construction tag {rec.kind!r}", rec.line)
    if catalog is None:
        catalog = Catalog((), {}, "")
    return VERIFIERS[rec.kind](rec, catalog)


@dataclass(frozen=True)
class CatalogReport:
    verdicts: tuple[Verdict, ...]

    def count(self, status: Status) -> int:
        return sum(1 for v in self.verdicts if v.status is status)

    @property
    def exit_code(self) -> int:
        return 1 if self.count(Status.FAIL) else 0

    def summary(self) -> dict:
        return {s.value: self.count(s) for s in Status} | {"rows": len(self.verdicts)}


def _matches(rec: ExampleRecord, tag: str) -> bool:
    return (
        tag in (rec.id, rec.kind, rec.section)
        or rec.section.startswith(tag + ".")
        or rec.expect("type") == tag
    )


def run_catalog(filter: Optional[str] = None, path: Union[str, Path, None] = None) -> CatalogReport:
    cat = load_catalog(path)
    verdicts: list[Verdict] = []
    for rec in cat.records:
        if filter is None or _matches(rec, filter):
            verdicts.extend(verify_record(rec, cat))
    return CatalogReport(tuple(verdicts))

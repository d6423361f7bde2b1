import textwrap

import pytest

from logenriques.catalog import (
    CatalogError,
    Status,
    VERIFIERS,
    load_catalog,
    run_catalog,
    verify_record,
)

IDS = [
    "hilb-enriques-surface", "kummer-involution", "hilb-k3-enriques-involution",
    "moduli-stable-sheaves", "quadric-intersection", "kummer-order3", "kummer-order4",
    "prime-order-quotient", "cubic-fourfold-lines", "kummer-order6", "kummer-order12",
    "moduli-semistable-sheaves", "relative-prym",
]


@pytest.fixture(scope="module")
def cat():
    return load_catalog()


def record(cat, rec_id):
    return next(r for r in cat.records if r.id == rec_id)


def test_every_section_appears_exactly_once(cat):
    assert [r.id for r in cat.records] == IDS
    sections = [r.section for r in cat.records]
    assert len(set(sections)) == len(sections)


def test_every_record_kind_has_a_verifier(cat):
    assert {r.kind for r in cat.records} == set(VERIFIERS)


def test_every_expected_value_has_provenance(cat):
    for r in cat.records:
        for name in r.expected:
            assert r.provenance(name), (r.id, name)


def test_deformation_types_are_configured(cat):
    assert {k: b2 for k, (_, b2) in cat.deformation_types.items()} == {
        "K3n": 23, "Kum": 7, "OG6": 8, "OG10": 24,
    }


def test_full_catalog_passes():
    report = run_catalog()
    assert report.count(Status.FAIL) == 0
    assert report.exit_code == 0
    assert all(v.status in (Status.PASS, Status.NOT_CHECKABLE) for v in report.verdicts)


def test_verify_is_deterministic(cat):
    for r in cat.records:
        a = [v.to_dict() for v in verify_record(r, cat)]
        b = [v.to_dict() for v in verify_record(r, cat)]
        assert a == b


def test_kummer_involution_record(cat):
    (v,) = verify_record(record(cat, "kummer-involution"), cat)
    assert v.status is Status.PASS
    checks = {c.field: c for c in v.checks}
    assert checks["dim"].got == 6
    assert checks["index"].got == 2
    assert checks["etale: d | n+1"].got is True
    assert checks["free"].got is True


def test_order12_row_for_n5(cat):
    rows = verify_record(record(cat, "kummer-order12"), cat)
    row = next(v for v in rows if v.label.startswith("n=5 "))
    assert row.status is Status.PASS
    assert {c.field: c.got for c in row.checks}["index"] == 12


def test_prym_record(cat):
    (v,) = verify_record(record(cat, "relative-prym"), cat)
    got = {c.field: c.got for c in v.checks}
    assert got["dim"] == 6 and got["index"] == 2
    assert "type" in {f for f, _ in v.not_checkable}
    assert v.status is Status.PASS


def test_quadric_note_is_kept_verbatim(cat):
    r = record(cat, "quadric-intersection")
    assert "any even integer n >= 1" in r.note
    (v,) = verify_record(r, cat)
    assert ("note", r.note) in v.not_checkable


def test_enriques_templates_satisfy_etale_constraint(cat):
    for rec_id, d in (("kummer-involution", 2), ("kummer-order3", 3), ("kummer-order4", 4)):
        (v,) = verify_record(record(cat, rec_id), cat)
        got = {c.field: c.got for c in v.checks}
        assert got["cover_degree"] == d and got["index"] == d
        assert got["etale: d | n+1"] is True


def test_section_filter_gives_one_row_per_residue(cat):
    report = run_catalog(record(cat, "kummer-order6").section)
    assert len(report.verdicts) == 6
    residues = sorted(int(v.label.split("= ")[1].split(" ")[0]) for v in report.verdicts)
    assert residues == [0, 1, 2, 3, 4, 5]


@pytest.mark.parametrize("tag, rows", [("prym", 1), ("kummer-order3", 1), ("CY", 2)])
def test_filters(tag, rows):
    assert len(run_catalog(tag).verdicts) == rows


def test_section_prefix_filter(cat):
    prefix = record(cat, "kummer-involution").section.rsplit(".", 1)[0]
    matching = [r for r in cat.records if r.section.startswith(prefix + ".")]
    assert len(matching) == 7
    assert {v.record_id for v in run_catalog(prefix).verdicts} == {r.id for r in matching}


def test_filter_matching_nothing():
    report = run_catalog("no-such-tag")
    assert report.verdicts == ()
    assert report.exit_code == 0


def write(tmp_path, body):
    p = tmp_path / "cat.yaml"
    p.write_text(textwrap.dedent(body))
    return p


def test_malformed_yaml_reports_line(tmp_path):
    p = write(tmp_path, """\
        examples:
          - id: a
            section: "A.1"
            construction: {kind: prym, g: 2
            expected: {}
        """)
    with pytest.raises(CatalogError) as exc:
        load_catalog(p)
    assert exc.value.line is not None and exc.value.line >= 4
    assert f"line {exc.value.line}" in str(exc.value)


def test_unknown_construction_reports_line(tmp_path):
    p = write(tmp_path, """\
        examples:
          - id: a
            section: "A.1"
            construction: {kind: prym, g: 2}
            expected: {dim: {value: 6, provenance: x}}
          - id: b
            section: "A.1"
            construction: {kind: nonsense}
            expected: {dim: {value: 6, provenance: x}}
        """)
    with pytest.raises(CatalogError, match="unknown construction tag") as exc:
        load_catalog(p)
    assert exc.value.line == 8


@pytest.mark.parametrize(
    "expected, message",
    [
        ("{dim: {value: 5, provenance: x}, type: {value: IHS, provenance: x}}", "odd dimension"),
        ("{index: {value: 1, provenance: x}}", "index must be"),
        ("{type: {value: K3, provenance: x}}", "unknown type tag"),
        ("{dim: 6}", "must have a 'value'"),
    ],
)
def test_record_invariants(tmp_path, expected, message):
    p = write(tmp_path, f"""\
        examples:
          - id: a
            section: "A.1"
            construction: {{kind: prym, g: 2}}
            expected: {expected}
        """)
    with pytest.raises(CatalogError, match=message):
        load_catalog(p)


def test_duplicate_ids_and_missing_keys(tmp_path):
    p = write(tmp_path, """\
        examples:
          - {id: a, section: "1", construction: {kind: prym, g: 2}, expected: {}}
          - {id: a, section: "2", construction: {kind: prym, g: 2}, expected: {}}
        """)
    with pytest.raises(CatalogError, match="duplicate"):
        load_catalog(p)
    p = write(tmp_path, "examples:\n  - {id: a, section: '1'}\n")
    with pytest.raises(CatalogError, match="missing") as exc:
        load_catalog(p)
    assert exc.value.line == 2
    p = write(tmp_path, "- 1\n- 2\n")
    with pytest.raises(CatalogError, match="top level"):
        load_catalog(p)


def test_failing_record_is_reported(tmp_path):
    p = write(tmp_path, """\
        examples:
          - id: wrong-prym
            section: "A.1"
            construction: {kind: prym, g: 3}
            expected:
              dim: {value: 6, provenance: "deliberately wrong"}
              index: {value: 2, provenance: x}
        """)
    report = run_catalog(path=p)
    assert report.exit_code == 1
    (v,) = report.verdicts
    assert v.status is Status.FAIL
    (bad,) = v.failures
    assert (bad.field, bad.got, bad.expected) == ("dim", 10, 6)

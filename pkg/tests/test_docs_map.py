import pytest

from src.docs_map import load_map, public_operations, validate_map


@pytest.fixture
def shipped():
    return load_map().model_dump()


def test_shipped_map_covers_every_public_operation():
    report = validate_map()
    assert report.passed, report.to_dict()


def test_public_operations_are_namespaced():
    ops = public_operations()
    assert "flow:exact_solution" in ops
    assert "disks:evolve_pipeline" in ops
    # classes are not operations
    assert "core:Disk" not in ops


def test_removed_operation_is_dangling(shipped):
    shipped["entries"][0]["operation"] = "flow:no_such_operation"
    report = validate_map(shipped)
    assert not report.passed
    assert shipped["entries"][0]["id"] in report.dangling
    # the operation it used to name is now unmapped
    assert "flow:exact_solution" in report.unmapped


def test_unknown_package_is_dangling(shipped):
    shipped["plumbing"].append("telemetry:push")
    assert "telemetry:push" in validate_map(shipped).dangling


def test_duplicate_mapping_is_reported(shipped):
    entry = dict(shipped["entries"][0])
    shipped["entries"].append(entry)
    report = validate_map(shipped)
    assert entry["id"] in report.duplicates
    assert entry["operation"] in report.duplicates


def test_out_of_scope_entries_need_no_operation(shipped):
    shipped["entries"].append({"id": "higher-order-wkb", "relation": "higher-order WKB terms",
                               "status": "out-of-scope"})
    assert validate_map(shipped).passed


def test_implemented_entry_must_name_operation(shipped):
    shipped["entries"].append({"id": "bare", "relation": "no operation"})
    with pytest.raises(ValueError, match="names no operation"):
        validate_map(shipped)

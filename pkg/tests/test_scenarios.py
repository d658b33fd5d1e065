import math
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.errors import ConstraintViolated, HypothesisViolated, ZeroCrossing
from src.oracle.containment import boundary_seeds, reference_path
from src.oracle.integrate import DEFAULT_ORACLE_TOL
from src.potential.potentials import LinearPotential, SinePotential, scale
from src.scenarios import (ScenarioDoc, build_scenario, dump_scenario_doc,
                           estimate_exponential_bound, estimate_wkb_negative, list_scenarios,
                           load_scenario_doc, paired_lens_profile, paired_lens_radius,
                           paired_overlap, run_checks, run_scenario, scenario_axis_crossing,
                           scenario_negative_increasing, scenario_turning_point,
                           scenario_wkb_negative, sweep_airy_offsets)
from src.scenarios.builders import (AXIS_CROSSING_AIRY_OFFSET, AXIS_CROSSING_MODIFIED_OFFSET,
                                    AXIS_CROSSING_WKB_SCALE, HALF_PI,
                                    TURNING_POINT_FLIPPED_DAMP, TURNING_POINT_PREFACTOR)

SCENARIO_DIR = Path(__file__).parent.parent / "config" / "scenarios"
GRID = 1025


def _assert_checks_pass(run, names=None):
    results = run_checks(run, names)
    failed = [r.to_dict() for r in results if not r.passed]
    assert not failed, failed
    return results


def test_registered_scenarios():
    assert list_scenarios() == ["axis_crossing", "exponential_bound", "negative_increasing",
                                "turning_point", "wkb_negative", "wkb_positive"]


def test_turning_point_variants():
    baseline = build_scenario("turning_point")
    assert baseline.name == "turning_point/baseline"
    assert baseline.plan.breakpoints == (0.715, 0.83)
    flipped = build_scenario("turning_point", "flipped")
    assert flipped.doc.regions[-1].prefer == "B"
    assert flipped.doc.regions[-1].vwkb.factor == TURNING_POINT_FLIPPED_DAMP
    assert {"upper_bound_converges", "radius_grows_last_region"} <= set(flipped.doc.checks)
    assert "lower_bound_converges" in baseline.doc.checks
    real_tail = build_scenario("turning_point", "real_tail")
    assert real_tail.doc.regions[-1].mechanism == "real"
    assert "upper_half_plane" not in real_tail.doc.checks


def test_build_scenario_errors():
    with pytest.raises(ValueError, match="Unknown scenario"):
        build_scenario("harmonic")
    with pytest.raises(ValueError, match="Unknown turning_point variant"):
        build_scenario("turning_point", "mirrored")
    with pytest.raises(ValueError, match="takes no parameters"):
        build_scenario("turning_point", c=1.0)
    with pytest.raises(ValueError, match="has no variant"):
        build_scenario("negative_increasing", "flipped")
    with pytest.raises(ValueError, match="takes no parameters"):
        build_scenario("negative_increasing", T0=2.0)
    with pytest.raises(ConstraintViolated, match="c\\^2"):
        build_scenario("negative_increasing", c=1.0)


def test_axis_crossing_parameters():
    modified = build_scenario("axis_crossing", "modified")
    assert modified.doc.variant == "modified"
    assert modified.doc.regions[1].b_offset_rel == AXIS_CROSSING_MODIFIED_OFFSET
    default = scenario_axis_crossing()
    assert default.doc.variant == "default"
    assert default.doc.regions[1].b_offset_rel == AXIS_CROSSING_AIRY_OFFSET == -0.0775
    assert default.doc.regions[2].vwkb.factor == AXIS_CROSSING_WKB_SCALE
    with pytest.raises(ValueError, match="offset"):
        scenario_axis_crossing(airy_b_offset=0.5)
    with pytest.raises(ValueError, match="positive"):
        scenario_axis_crossing(wkb_c_modification=0.0)


def test_wkb_negative_hypothesis_is_checked_when_built():
    # V = -2 + x is fine, a weak sine potential is not
    scenario_wkb_negative(LinearPotential(-2.0, 1.0), interval=(0.0, 1.0))
    with pytest.raises(HypothesisViolated):
        scenario_wkb_negative(SinePotential(0.1, 0.0, offset=-2.0), interval=(0.0, math.pi / 2))


@pytest.mark.parametrize("path", sorted(SCENARIO_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_json_matches_builder(path):
    from_file = build_scenario(str(path))
    from_code = build_scenario(from_file.doc.name, from_file.doc.variant
                               if from_file.doc.name == "turning_point" else None)
    assert from_file.doc.estimate == from_code.doc.estimate
    assert from_file.doc.checks == from_code.doc.checks
    a, b = from_code.doc.domain
    assert from_file.doc.domain == pytest.approx((a, b))
    xs = np.linspace(a, b, 7)
    assert np.allclose(from_file.V.eval(xs), from_code.V.eval(xs))


def test_scenario_documents_survive_a_file(tmp_path):
    doc = scenario_turning_point("flipped").doc
    path = tmp_path / "flipped.json"
    dump_scenario_doc(doc, path)
    assert load_scenario_doc(path) == doc


def test_scenario_document_validation():
    base = scenario_turning_point().doc.model_dump()
    with pytest.raises(ValidationError, match="needs regions"):
        ScenarioDoc.model_validate({**base, "regions": []})
    gap = [dict(r) for r in base["regions"]]
    gap[1]["interval"] = (0.72, 0.83)
    with pytest.raises(ValidationError, match="share an endpoint"):
        ScenarioDoc.model_validate({**base, "regions": gap})
    airy = [dict(r) for r in base["regions"]]
    airy[1]["taylor_at"] = None
    with pytest.raises(ValidationError, match="taylor_at"):
        ScenarioDoc.model_validate({**base, "regions": airy})
    with pytest.raises(ValidationError, match="Unknown potential kind"):
        ScenarioDoc.model_validate({**base, "potential": {"kind": "coulomb"}})
    with pytest.raises(ValidationError):
        ScenarioDoc.model_validate({**base, "owner": "nobody"})
    with pytest.raises(ValidationError, match="needs an interval"):
        ScenarioDoc.model_validate({**base, "estimate": "wkb_negative"})


def test_negative_increasing_run():
    run = run_scenario(scenario_negative_increasing(), GRID)
    traj = run.trajectory
    assert np.allclose(traj.beta + traj.R, 1.5)
    assert traj.cases == ("B",)
    assert traj.constants["c"] == pytest.approx(1.5)
    results = _assert_checks_pass(run)
    assert {r.kind for r in results} == {"exact"}


def test_paired_trajectories_shrink_the_enclosure():
    narrow = run_scenario(scenario_negative_increasing(c=1.5), 513).trajectory
    wide = run_scenario(scenario_negative_increasing(c=2.0), 513).trajectory
    # at x = 0.5 the c = 2 disk contains the c = 1.5 disk
    assert paired_lens_radius(narrow, wide, 0.5) == pytest.approx(0.25)


def test_wkb_negative_run():
    run = run_scenario(build_scenario("wkb_negative"), GRID)
    traj = run.trajectory
    assert traj.cases == ("TV",)
    assert traj.constants["T0"] == 1.5
    assert traj.constants["total_variation"] > 0.0
    _assert_checks_pass(run)


def test_exponential_bound_run():
    run = run_scenario(build_scenario("exponential_bound"), GRID)
    U = run.inputs.flat("U")
    assert np.all(U < -25.0)
    assert np.all(run.inputs.flat("alpha") == run.inputs.flat("alpha")[0])
    _assert_checks_pass(run)


def test_wkb_positive_run():
    run = run_scenario(build_scenario("wkb_positive"), GRID)
    assert set(run.trajectories) == {"upper", "lower"}
    assert run.trajectory is run.trajectories["upper"]
    upper, lower = run.trajectories["upper"], run.trajectories["lower"]
    # the lens is symmetric about the real axis at its left end
    assert upper.beta[0] == pytest.approx(0.0, abs=1e-12)
    assert lower.R[0] == pytest.approx(upper.R[0])
    _assert_checks_pass(run)


def test_run_checks_rejects_unknown_names():
    run = run_scenario(scenario_negative_increasing(), 257)
    with pytest.raises(ValueError, match="Unknown checks"):
        run_checks(run, ["algebra", "monotone_flux"])


@pytest.mark.slow
def test_turning_point_baseline_is_contained():
    run = run_scenario(scenario_turning_point())
    traj = run.trajectory
    assert len(traj.segments) == 3 and len(traj.jumps) == 2
    assert set(traj.cases) <= {"A", "B"}
    assert traj.segments[-1].case[-1] == "A"
    _assert_checks_pass(run)


@pytest.mark.slow
def test_turning_point_flipped_radius_grows():
    run = run_scenario(scenario_turning_point("flipped"))
    last = run.trajectory.segments[-1]
    assert last.R[-1] > last.R[last.x.size // 2]
    assert last.case[-1] == "B"
    _assert_checks_pass(run)


@pytest.mark.slow
def test_turning_point_real_tail():
    run = run_scenario(scenario_turning_point("real_tail"))
    assert run.trajectory.segments[-1].cases == ("REAL",)
    assert np.all(run.trajectory.segments[-1].beta == 0.0)
    _assert_checks_pass(run, ["containment", "jump_containment", "residual_margin"])


@pytest.mark.slow
def test_axis_crossing_default():
    run = run_scenario(scenario_axis_crossing())
    _assert_checks_pass(run)


@pytest.mark.slow
def test_sweep_reports_the_shipped_offset():
    results = sweep_airy_offsets([-0.0775])
    assert results == [{"offset": -0.0775, "completed": True, "error": None, "x": None,
                        "final_R": results[0]["final_R"]}]
    assert results[0]["final_R"] > 0.0


@pytest.mark.slow
def test_turning_point_lens_shrinks():
    baseline = run_scenario(scenario_turning_point()).trajectory
    flipped = run_scenario(scenario_turning_point("flipped")).trajectory
    profile = paired_lens_profile(baseline, flipped, [0.85, 1.4, HALF_PI])
    at = profile.set_index("x")
    assert at.loc[1.4, "ratio"] < 0.2
    assert at.loc[HALF_PI, "lens"] < 0.05 * at.loc[0.85, "lens"]


@pytest.mark.slow
def test_axis_crossing_variants_agree_in_the_last_region():
    default = run_scenario(scenario_axis_crossing()).trajectory
    modified = run_scenario(build_scenario("axis_crossing", "modified")).trajectory
    overlap = paired_overlap(default, modified, np.linspace(0.85, HALF_PI, 10))
    assert overlap.min() >= 0.95


@pytest.mark.slow
def test_uncalibrated_axis_crossing_stops_with_a_zero_crossing():
    with pytest.raises(ZeroCrossing) as info:
        run_scenario(scenario_axis_crossing(airy_b_offset=0.0))
    assert 0.52 <= info.value.x <= 0.83


def test_wkb_negative_radius_shrinks_with_scaling():
    V = SinePotential(TURNING_POINT_PREFACTOR)
    final = []
    for lam in (1.0, 10.0, 100.0):
        _, traj = estimate_wkb_negative(scale(V, lam), (0.0, 0.6), 1.0, 513)
        assert traj.R[0] == 0.0
        final.append(traj.final_disk.radius)
    assert final[0] > final[1] > final[2] > 0.0


def test_exponential_bound_weakens_with_interval_length():
    V = SinePotential(TURNING_POINT_PREFACTOR)
    _, short = estimate_exponential_bound(V, (0.6, 0.9), 5.0, 1.5, 513)
    _, long = estimate_exponential_bound(V, (0.5, 0.9), 5.0, 1.5, 513)
    # same center line: the supremum of V is at the right end in both cases
    assert short.alpha[-1] == pytest.approx(long.alpha[-1])
    assert long.final_disk.radius > short.final_disk.radius


@pytest.mark.parametrize("name", ["negative_increasing", "wkb_negative", "exponential_bound",
                                  "wkb_positive"])
def test_real_potentials_keep_the_sign_of_im_y(name):
    run = run_scenario(build_scenario(name), 513)
    assert run.V.is_real
    disk = run.trajectory.initial_disk
    seeds = [s for s in boundary_seeds(disk, 16) + [disk.center]
             if abs(s.imag) > 1e-6 * (1.0 + disk.radius)]
    assert seeds
    for seed in seeds:
        y, _ = reference_path(run.V, seed, run.trajectory.grid.points, DEFAULT_ORACLE_TOL)
        assert np.all(np.sign(seed.imag) * y.imag > -10 * DEFAULT_ORACLE_TOL)

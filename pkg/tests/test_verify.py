import json

import pytest

from symdg.digraph import directed_cycle, is_s_arc_transitive_under
from symdg.errors import EnumerationBoundError, NotAnAutomorphismError
from symdg.verify import (
    FAIL,
    PASS,
    SKIPPED,
    ClaimResult,
    ClaimSkipped,
    VerificationReport,
    check_completeness,
    commutation_matrix,
    corrupt,
    expected_claim_ids,
    negative_controls,
    product_witness,
    run_claim,
    verify,
    verify_gamma_family,
    verify_kronecker,
    verify_tensor_powers,
)
from symdg.exact import RationalMatrix


def test_run_claim_statuses():
    assert run_claim("x", "t", lambda: (True, {})).status == PASS
    assert run_claim("x", "t", lambda: (False, {"why": 1})).details == {"why": 1}

    def skip():
        raise ClaimSkipped("too big")

    def bound():
        raise EnumerationBoundError("over")

    def boom():
        raise ValueError("bad")

    assert run_claim("x", "t", skip).reason == "too big"
    assert run_claim("x", "t", bound).status == SKIPPED
    failed = run_claim("x", "t", boom)
    assert failed.status == FAIL and "ValueError" in failed.details["error"]


def test_report_is_sorted_and_serializable():
    claims = [ClaimResult("b", "t", PASS), ClaimResult("a", "t", FAIL), ClaimResult("c", "t", SKIPPED, reason="r")]
    report = VerificationReport(claims, {"p": 1})
    assert [c.claim_id for c in report.claims] == ["a", "b", "c"]
    assert report.summary == {PASS: 1, FAIL: 1, SKIPPED: 1, "total": 3}
    assert report.failed_ids() == ["a"] and not report.ok
    data = json.loads(report.dumps())
    assert data["schema"] == "symdg.verification-report" and data["schema_version"] == 1
    assert "1 passed, 1 failed, 1 skipped" in report.to_text()


def test_gamma_family_report(gamma_instances):
    report = verify_gamma_family([2, 3])
    assert report.ok, report.to_text()
    assert check_completeness(report, ["gamma"], [2, 3]) is False  # controls are attached only by verify()
    ids = {c.claim_id for c in report.claims}
    assert ids == {i for i in expected_claim_ids(["gamma"], [2, 3]) if i.startswith("gamma.")}
    rep = report.claim("gamma.s2.e_representation").details
    assert rep["scalar_twist_needed"] and not rep["untwisted_formula_multiplicative"]
    assert rep["multiplicative_after_twist"]


def test_gamma_rejects_small_s():
    with pytest.raises(ValueError):
        verify_gamma_family([1])


def test_enumeration_bound_becomes_skip():
    report = verify_gamma_family([2, 4], enumeration_bound=2000)
    assert report.claim("gamma.s2.a_vertices").status == PASS
    skipped = [c for c in report.claims if c.claim_id.startswith("gamma.s4.")]
    assert skipped and all(c.status == SKIPPED and "s=4" in c.reason for c in skipped)


def test_max_arcs_becomes_skip():
    report = verify_gamma_family([3], max_arcs=10)
    assert report.claim("gamma.s3.d_s_arc_transitive").status == SKIPPED


def test_inject_fault_fails_arc_transitivity():
    report = verify_gamma_family([2], inject_fault=True)
    assert report.failed_ids() == ["gamma.s2.d_s_arc_transitive"]
    assert "NotAnAutomorphismError" in report.claim("gamma.s2.d_s_arc_transitive").details["error"]


def test_parallel_matches_serial():
    strip = lambda r: r.dumps(with_timing=False)
    assert strip(verify_gamma_family([2, 3], jobs=2)) == strip(verify_gamma_family([2, 3], jobs=1))


def test_corrupt_changes_first_generator():
    c = directed_cycle(4)
    from symdg.perm import Permutation

    w = [Permutation([1, 2, 3, 0])]
    assert is_s_arc_transitive_under(c, w, 1).transitive
    with pytest.raises(NotAnAutomorphismError):
        is_s_arc_transitive_under(c, corrupt(w), 1)


def test_commutation_matrix():
    A = RationalMatrix([[1, 2], [3, 4]])
    B = RationalMatrix([[0, 1, 2], [1, 0, 0], [5, 0, 1]])
    K = commutation_matrix(2, 3)
    assert K * A.kron(B) * K.transpose() == B.kron(A)


def test_product_witness_acts_on_pairs():
    from symdg.perm import Permutation

    w = Permutation([1, 2, 0])
    gens = product_witness([w], 3)
    assert len(gens) == 3
    swap = gens[-1]
    assert all(swap(u * 3 + v) == v * 3 + u for u in range(3) for v in range(3))


def test_kronecker_suite_deterministic():
    a, b = verify_kronecker(trials=40, seed=3), verify_kronecker(trials=40, seed=3)
    assert a.ok
    assert a.dumps(with_timing=False) == b.dumps(with_timing=False)


def test_tensor_suite_n1():
    report = verify_tensor_powers(1)
    assert [c.claim_id for c in report.claims] == ["tensor.gamma2.n1.same_as_base"] and report.ok


def test_tensor_suite_n3_skips_direct():
    report = verify_tensor_powers(3)
    assert report.ok
    assert report.claim("tensor.gamma2.n3.direct").status == SKIPPED
    assert report.claim("tensor.sigma.n3.not_diagonalizable").status == PASS
    assert report.claim("tensor.sigma.n3.direct").status == SKIPPED


def test_negative_controls_pass():
    report = negative_controls()
    assert report.ok
    assert report.claim("control.fabricated_table_row_rejected").details["diff"][0].startswith("row ")
    assert report.claim("out_of_scope.smallest_orders").status == SKIPPED


def test_verify_rejects_unknown_suite():
    with pytest.raises(ValueError):
        verify(["nope"])


def test_full_report_is_complete_and_deterministic():
    first = verify(["gamma", "kronecker"], s_values=[2, 3])
    second = verify(["gamma", "kronecker"], s_values=[2, 3])
    assert first.ok
    assert check_completeness(first, ["gamma", "kronecker"], [2, 3])
    assert first.dumps(with_timing=False) == second.dumps(with_timing=False)

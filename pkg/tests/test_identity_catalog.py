import json
import math

import pytest

from zetaid import identity_catalog as ic
from zetaid.constants import EULER_GAMMA
from zetaid.errors import CycleError, DecayError, DomainError

import oracles

LN2 = math.log(2.0)
CONVERGENT_IDS = [r.id for r in ic.catalog() if r.cls == ic.CONVERGENT]
DERIVED_IDS = [r.id for r in ic.catalog() if r.parents]
MOMENT_IDS = [r.id for r in ic.catalog() if r.cls == ic.MOMENT]


class TestEvaluation:
    def test_w0h_lhs(self):
        assert abs(ic.evaluate_lhs("s4.W0h").value - LN2 / 2) < 1e-10

    def test_rz_lhs(self):
        assert abs(ic.evaluate_lhs("s5.Rz").value - (EULER_GAMMA - 1)) < 1e-10

    def test_ip4a_lhs(self):
        expected = -1.5 + math.pi ** 2 / 6 - EULER_GAMMA / 2
        assert abs(ic.evaluate_lhs("s5.Ip4a").value - expected) < 1e-10

    def test_rhs_values(self):
        assert abs(ic.evaluate_rhs("s3.Wb0") - 0.447498183476330) < 1e-12
        assert abs(ic.evaluate_rhs("s4.Hiworh") - (math.pi ** 2 / 48 - LN2 / 4)) < 1e-15
        assert abs(ic.evaluate_rhs("s4.CI1a") - (math.pi / 2 + 2)) < 1e-15

    def test_non_convergent_lhs_needs_cesaro(self):
        with pytest.raises(DecayError):
            ic.evaluate_lhs("s4.V12p")


class TestVerify:
    def test_dg3(self):
        rep = ic.verify("s4.dg3", tol=1e-8)
        assert rep.passed and abs(rep.rhs - (2 - 3 * LN2)) < 1e-15

    @pytest.mark.parametrize("id_", ["s4.Diff1", "s5.CR5"])
    def test_continuation_records_are_consistency_verified(self, id_):
        rep = ic.verify(id_)
        assert rep.passed
        assert rep.notes[0] == ic.AC_NOTE
        assert rep.quadrature is None

    def test_cr5_value(self):
        assert abs(ic.evaluate_rhs("s5.CR5") + math.pi) < 1e-15

    def test_indeterminate_records_are_tagged(self):
        for id_, _, _ in ic.list_identities("indeterminate"):
            assert ic.INDETERMINATE_NOTE in ic.get(id_).notes

    @pytest.mark.parametrize("id_", CONVERGENT_IDS)
    def test_every_convergent_record(self, id_):
        assert ic.verify(id_, tol=1e-7).passed

    @pytest.mark.parametrize("id_", MOMENT_IDS)
    def test_moment_records(self, id_):
        rep = ic.verify(id_)
        assert rep.passed
        assert rep.quadrature is not None

    def test_w1m2b(self):
        rep = ic.verify("s3.W1m2b", tol=1e-7)
        assert rep.passed and rep.abs_err < 1e-7

    def test_deterministic(self):
        first = ic.dumps([ic.verify(i).as_dict() for i in ("s4.W0h", "s4.Diff2", "s5.CR5")])
        second = ic.dumps([ic.verify(i).as_dict() for i in ("s4.W0h", "s4.Diff2", "s5.CR5")])
        assert first == second

    def test_failure_is_reported_not_raised(self, monkeypatch):
        bad = ic.IdentityRecord("x.bad", ic.CONVERGENT, "pole_here(1)", ic.get("s4.W0h").lhs)
        rep = ic.verify(bad)
        assert not rep.passed


class TestConsistency:
    @pytest.mark.parametrize("id_", ["s4.dg3", "s4.Az01m", "s5.Wdm1"])
    def test_named_combinations(self, id_):
        report = ic.consistency_check([id_])
        assert report.passed

    @pytest.mark.parametrize("id_", DERIVED_IDS)
    def test_every_derivation_edge_matches(self, id_):
        edge = ic.consistency_check([id_]).checks[0]
        assert edge.residual <= ic.CONSISTENCY_TOL * max(1.0, abs(edge.rhs)), edge

    def test_graph_rooted_and_acyclic(self):
        report = ic.consistency_check()
        assert report.unrooted == []
        assert len(report.checks) >= 25

    def test_cycle_detected(self, monkeypatch):
        a = ic.IdentityRecord("t.a", ic.AC, "1", parents=(ic.Parent(1.0, "t.b"),))
        b = ic.IdentityRecord("t.b", ic.AC, "1", parents=(ic.Parent(1.0, "t.a"),))
        monkeypatch.setattr(ic, "_CATALOG", ic.Catalog([a, b]))
        with pytest.raises(CycleError):
            ic.consistency_check()

    def test_unrooted_reported(self, monkeypatch):
        a = ic.IdentityRecord("t.a", ic.AC, "2", parents=(ic.Parent(2.0, "t.b"),))
        b = ic.IdentityRecord("t.b", ic.AC, "1")
        monkeypatch.setattr(ic, "_CATALOG", ic.Catalog([a, b]))
        report = ic.consistency_check()
        assert report.unrooted == ["t.a", "t.b"]
        assert not report.passed

    def test_duplicate_ids_rejected(self):
        rec = ic.IdentityRecord("t.a", ic.AC, "1")
        with pytest.raises(ValueError):
            ic.Catalog([rec, rec])


class TestTheorems:
    def test_thm1(self):
        rep = ic.theorem_check("Thm1", 0.7, 1.2, 0.3)
        assert rep.passed
        assert abs(rep.rhs - oracles.THM1_07_12_03) < 1e-8 * abs(oracles.THM1_07_12_03)

    def test_thm2(self):
        rep = ic.theorem_check("Thm2", 0.5, 1.5, 1.0)
        assert rep.passed
        assert abs(rep.rhs - oracles.THM2_05_15_10) < 1e-8 * abs(oracles.THM2_05_15_10)

    def test_cor3(self):
        rep = ic.theorem_check("Cor3", 1.0, 1.0, 0.5, sigma=0.5, tol=1e-7)
        assert rep.passed

    @pytest.mark.parametrize("args", [("Thm1", 0.7, 1.2, -0.3), ("Thm1", 2.5, 1.2, 0.3),
                                      ("Thm2", 0.5, 0.4, 1.0), ("Cor3", 1.0, 0.3, 0.5),
                                      ("Thm9", 1.0, 1.0, 1.0)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            ic.theorem_check(*args)


class TestListing:
    def test_size(self):
        assert len(ic.list_identities()) >= 60

    def test_convergent(self):
        ids = {i for i, _, _ in ic.list_identities("convergent")}
        assert {"s4.W0h", "s5.Rz", "s3.Wb0"} <= ids

    def test_indeterminate(self):
        ids = {i for i, _, _ in ic.list_identities(ic.INDETERMINATE)}
        assert {"s5.Car1", "s5.Oa4b", "s5.MgM1"} <= ids

    def test_sorted_with_anchor(self):
        rows = ic.list_identities()
        assert [r[0] for r in rows] == sorted(r[0] for r in rows)
        assert all(anchor for _, _, anchor in rows)

    def test_minimum_contents(self):
        required = ("Cv2a Cv1b1 W1m2 W1m2b Wb0 Xs2 Ev2a Xs0 Xs1 Sc2Ld CR2a W0 W0h Wh1 dg1 dg2 dg3 dg1a "
                    "R1b12pA R12b12pm Hi0 Hip R2b12pmD R1bmD Pr12a IntREta Wc0 Wc0b Whalfb Whalfc CI1 "
                    "CI1a CI2 CI2a Diff1 Diff2 Sc1 Sc2 BRId BImId BImId2 T1A T2A QA2 QB2 AzPlus AzMinus "
                    "S0 S1 s01ma s01pa spboth Azm Wm0 Wm1 Az01p Az01m ZA0 ZA1 Zans1p Zans2p Zans12p "
                    "V12p P2 HAB2 HAB4 H2A H2B Ming2e Ming2f Ming2fa X1 X2 Rz Rz2 Rz3 Rz4 Rz5 Ip3a Ip4 "
                    "Ip4a Ip5 Ip5a Rparta CR1 CR2 CR3 CR4 CR5 Rpc1 Iparta DR1 Wdm Wdp Wdm1 Wdm2 Car1 "
                    "CbR1 Way4a Limw0 Limw0A Limw0B Limw0M Limw1 MingWha MgM1 Oa3 Oa4 Oa4b").split()
        anchors = {r.anchor for r in ic.catalog()}
        assert [a for a in required if a not in anchors] == []
        assert {f"appendixC.euler{k}" for k in range(1, 5)} <= set(ic.catalog().ids())


class TestSerialization:
    def test_catalog_json(self):
        doc = json.loads(ic.catalog_json())
        assert doc["schema_version"] == ic.SCHEMA_VERSION
        rec = doc["records"][0]
        for key in ("id", "class", "params", "anchor", "parents"):
            assert key in rec

    def test_floats_round_trip(self):
        text = ic.dumps({"x": 0.1, "y": 1 / 3})
        assert text == '{"x": 0.10000000000000001, "y": 0.33333333333333331}'
        assert json.loads(text)["y"] == 1 / 3

    def test_class_filter(self):
        doc = json.loads(ic.catalog_json("moment"))
        assert {r["id"] for r in doc["records"]} == set(MOMENT_IDS)

    def test_non_finite_is_null(self):
        assert ic.dumps([math.nan]) == "[null]"

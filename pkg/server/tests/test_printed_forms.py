import numpy as np

from services import printed_forms
from services.capacity_service import ec_closed_form_approx
from services.outage_service import outage_given_success, outage_given_success_quadrature
from services.postsic_qpsk import equal_rail_success_prob, psi_kernel, table_rails


class TestPrintedForms:
    def test_inconsistency_catalogue(self):
        ids = [item["id"] for item in printed_forms.KNOWN_INCONSISTENCIES]
        assert ids == [
            "success-outage-closed-form",
            "capacity-approximation-sign",
            "legacy-zeta-bound",
            "qpsk-equal-rail-success",
            "qpsk-psi-kernel",
            "qpsk-unequal-rail-moment",
        ]
        for item in printed_forms.KNOWN_INCONSISTENCIES:
            assert set(item) == {"id", "printed", "used", "arbiter"}

    def test_printed_outage_is_rejected_by_its_integral(self, ten_db, x11):
        oracle = outage_given_success_quadrature(ten_db, x11)
        assert abs(outage_given_success(ten_db, x11) - oracle) < 1e-6
        assert abs(printed_forms.outage_given_success(ten_db, x11) - oracle) > 1e-3

    def test_printed_approximation_adds_the_chiani_term(self, ten_db):
        assert printed_forms.ec_closed_form_approx(ten_db) > ec_closed_form_approx(ten_db)

    def test_printed_qpsk_pieces_differ(self, ten_db):
        q = table_rails(ten_db)[0]
        assert abs(printed_forms.equal_rail_success_prob(q.mu_i) - equal_rail_success_prob(q.mu_i)) > 1e-3
        assert abs(printed_forms.psi_kernel(1.0, 1.0) - psi_kernel(1.0, 1.0)) > 1e-3

    def test_printed_qpsk_moment_is_finite(self, ten_db):
        values = [printed_forms.qpsk_second_moment_w(ten_db, q) for q in table_rails(ten_db)]
        assert np.all(np.isfinite(values))

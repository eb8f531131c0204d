import numpy as np
import pytest

from umeb.constructions import (
    I2,
    SX,
    SY,
    SZ,
    CertificationError,
    UmebCandidate,
    clock_shift_basis,
    complete_deficit_one,
    icosahedron_umeb,
    kron,
    qubit_fourth_member,
    tiles_umeb,
)
from umeb.duality import embed_operator, extract_operator, is_maximally_entangled, random_unitary
from umeb.opspace import gram_schmidt_hs, hs_inner
from umeb.optimize import OptimizerConfig
from umeb.verifier import (
    EVIDENCE,
    PROOF,
    SearchConfig,
    StructuralError,
    TilesComplementParams,
    complement_of,
    fit_probe_constants,
    gram_check,
    max_entanglement_in_subspace,
    qubit_extendability_property,
    qubit_triple,
    random_alpha_beta,
    search_umeb,
    skew_certificate,
    tiles_family_basis,
    tiles_form_check,
    tiles_identity_probe,
    tiles_moment_matrix,
    verify_unextendibility,
)

FAST = OptimizerConfig(restarts=20, seed=0)


def test_gram_check_constructions():
    for cand in (icosahedron_umeb(), tiles_umeb()):
        r = gram_check(cand)
        assert max(r.max_offdiag, r.max_diag_dev, r.max_unitarity_defect) < 1e-10
        assert r.passes()


def test_gram_check_duplicate():
    r = gram_check(UmebCandidate(2, (I2, SX, SX)))
    assert r.max_offdiag == pytest.approx(2)
    assert not r.passes()


def test_gram_check_flags_non_unitary():
    r = gram_check(UmebCandidate(2, (np.diag([np.sqrt(2), 0]),)))
    assert r.max_unitarity_defect > 1
    assert not r.passes()


def test_gram_invariant_under_dressing(rng):
    for cand in (icosahedron_umeb(), tiles_umeb()):
        v, w = random_unitary(cand.d, rng), random_unitary(cand.d, rng)
        a, b = gram_check(cand), gram_check(cand.dressed(v, w))
        for f in ("max_offdiag", "max_diag_dev", "max_unitarity_defect"):
            assert abs(getattr(a, f) - getattr(b, f)) < 1e-12


def test_complement_dimensions():
    assert len(complement_of(icosahedron_umeb())) == 3
    assert len(complement_of(tiles_umeb())) == 4
    assert len(complement_of(clock_shift_basis(2))) == 0
    with pytest.raises(CertificationError):
        complement_of(UmebCandidate(2, (I2, SX, SX)))


def test_complement_duality_bridge(rng):
    cand = icosahedron_umeb()
    comp = complement_of(cand)
    states = cand.states()
    for _ in range(20):
        x = rng.standard_normal(len(comp)) + 1j * rng.standard_normal(len(comp))
        psi = embed_operator(np.sqrt(3) * comp.combine(x / np.linalg.norm(x)))
        assert np.max(np.abs(states.conj() @ psi)) < 1e-10
        # a random state is orthogonal iff its operator has no projection on the members
        phi = rng.standard_normal(9) + 1j * rng.standard_normal(9)
        phi /= np.linalg.norm(phi)
        op = extract_operator(phi)
        phi_perp = phi - states.T @ (states.conj() @ phi)
        op_perp = extract_operator(phi_perp)
        assert max(abs(hs_inner(u, op_perp)) for u in cand.members) < 1e-10
        assert max(abs(hs_inner(u, op)) for u in cand.members) > 1e-6


def test_skew_certificate():
    cert = skew_certificate(icosahedron_umeb())
    assert cert and cert.residual < 1e-10 and "odd" in cert.detail
    assert not skew_certificate(tiles_umeb())
    assert not skew_certificate(UmebCandidate(2, (I2, SZ)))


def test_tiles_form_check():
    cert = tiles_form_check(tiles_umeb())
    assert cert and cert.residual < 1e-9
    with pytest.raises(StructuralError):
        tiles_form_check(icosahedron_umeb())


def test_tiles_family_orthogonal_to_members():
    members = tiles_umeb().members
    for e in tiles_family_basis():
        assert abs(np.trace(e)) < 1e-12
        assert max(abs(hs_inner(u, e)) for u in members) < 1e-12


def test_tiles_params():
    p = TilesComplementParams(1, 2j, -1, 0.5)
    assert p.g + 2 * (p.a + p.b + p.c + p.d) == 0
    a = p.coefficient_matrix()
    assert a[1, 1] == p.g
    assert np.allclose(a, [[1, 1, 2j], [0.5, p.g, 2j], [0.5, -1, -1]])


def test_moment_matrix_oracle():
    # unitarity of sum x_k E_k needs x x^dagger = X, impossible at full rank
    x = tiles_moment_matrix()
    assert np.allclose(x, x.conj().T, atol=1e-12)
    evals = np.linalg.eigvalsh(x)
    assert np.allclose(evals, [1 / 72, 1 / 8, 1 / 8, 1 / 8], atol=1e-12)


def test_probe_zero():
    p = tiles_identity_probe(TilesComplementParams(0, 0, 0, 0))
    assert np.allclose(p.aux_values, 0) and np.allclose(p.aux_targets, 0)
    assert p.norm_residual == 0 and p.k_trace == 0 and p.cross_target == 0


def test_probe_single_parameter_not_maximally_entangled():
    p = TilesComplementParams(1, 0, 0, 0)
    assert p.g == -2
    probe = tiles_identity_probe(p)
    assert probe.aux_targets[3] == pytest.approx(-2)
    u = p.operator()
    u = 2 * u / np.linalg.norm(u)
    assert not is_maximally_entangled(embed_operator(u))


def test_probe_aux_and_norm_identities(rng):
    kappa_aux, _ = fit_probe_constants()
    assert kappa_aux == pytest.approx(1)
    for _ in range(100):
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        probe = tiles_identity_probe(TilesComplementParams(*z))
        assert np.max(np.abs(probe.aux_values - kappa_aux * probe.aux_targets)) < 1e-9
        assert abs(probe.norm_residual) < 1e-9


def test_optimizer_full_qubit_space():
    sub = gram_schmidt_hs([I2, SX, SY, SZ])
    rep = max_entanglement_in_subspace(sub, FAST)
    assert rep.best_value == pytest.approx(1, abs=1e-6)
    assert rep.extendable()
    assert is_maximally_entangled(rep.best_state, 1e-6)


def test_optimizer_icosahedron_complement():
    for seed in (0, 3):
        rep = max_entanglement_in_subspace(complement_of(icosahedron_umeb()), OptimizerConfig(restarts=20, seed=seed))
        assert rep.best_value <= 1e-6
        assert rep.best_entropy_bits == pytest.approx(1.0, abs=1e-3)
        assert rep.best_value < 0.9


def test_optimizer_rejects_empty():
    with pytest.raises(ValueError):
        max_entanglement_in_subspace(complement_of(clock_shift_basis(2)), FAST)


def test_optimizer_deterministic():
    comp = complement_of(tiles_umeb())
    a = max_entanglement_in_subspace(comp, FAST)
    b = max_entanglement_in_subspace(comp, FAST)
    assert a.best_value == b.best_value
    assert np.array_equal(a.best_state, b.best_state)


def test_optimizer_monotone_on_nested_subspaces(rng):
    d = 3
    gens = [rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)) for _ in range(5)]
    prev = 0.0
    for k in range(1, 6):
        rep = max_entanglement_in_subspace(gram_schmidt_hs(gens[:k]), FAST)
        assert rep.best_value >= prev - 1e-6
        prev = rep.best_value


def test_verify_unextendibility_labels():
    rep, label = verify_unextendibility(icosahedron_umeb(), FAST)
    assert label == PROOF and rep.structural_certificate == "skew_odd"
    rep, label = verify_unextendibility(tiles_umeb(), FAST)
    assert label == EVIDENCE and rep.structural_certificate == "tiles_form"
    assert rep.best_value < 0.999


def test_qubit_property():
    assert qubit_extendability_property(1000, seed=7)


def test_qubit_degenerate_draw():
    cand = qubit_triple(1, 0, I2, I2)
    assert np.allclose(cand.members[2], SX)
    assert np.allclose(qubit_fourth_member(1, 0), -SY)
    assert is_maximally_entangled(complete_deficit_one(cand))


def test_qubit_analytic_matches_numeric(rng):
    for _ in range(200):
        v, w = random_unitary(2, rng), random_unitary(2, rng)
        alpha, beta = random_alpha_beta(rng)
        numeric = extract_operator(complete_deficit_one(qubit_triple(alpha, beta, v, w)))
        analytic = v @ qubit_fourth_member(alpha, beta) @ w
        assert abs(hs_inner(analytic, numeric)) == pytest.approx(2, abs=1e-8)


def test_search_qubit_triple_is_extendable():
    res = search_umeb(2, 3, SearchConfig(optimizer=FAST), seed=0)
    assert res.converged and res.gram_residual < 1e-8
    assert res.report.best_value == pytest.approx(1, abs=1e-6)


def test_search_qutrit_six():
    res = search_umeb(3, 6, SearchConfig(optimizer=FAST), seed=11)
    assert res.converged and res.gram_residual < 1e-8
    assert gram_check(res.candidate).passes()
    assert res.report.best_value < 1


def test_search_rejects_deficit_one():
    with pytest.raises(ValueError, match="d\\^2 - 1"):
        search_umeb(3, 8)
    with pytest.raises(ValueError):
        search_umeb(3, 9)
    with pytest.raises(ValueError):
        search_umeb(3, 1)


def test_search_reports_stagnation():
    res = search_umeb(3, 6, SearchConfig(max_rounds=1, optimizer=FAST), seed=11)
    assert not res.converged and res.candidate is None and res.report is None
    assert res.gram_residual > 1e-8

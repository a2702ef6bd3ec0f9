import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bdris import network
from bdris.errors import AssumptionError, ConversionError, ModelError
from bdris.network import (ImpedanceBlocks, PortLayout, TerminationSpec, channel_blocks, general_channel,
                           random_impedance_blocks, random_unitary, s_to_z,
                           scattering_from_impedance_result1, simplified_channel_result1,
                           simplified_channel_result2, z_to_s)
from bdris.oracles import make_rng


def test_matched_load_reflects_nothing():
    assert np.array_equal(z_to_s(50 * np.eye(4)), np.zeros((4, 4)))
    np.testing.assert_allclose(z_to_s(150 * np.eye(2)), 0.5 * np.eye(2), atol=1e-15)


def test_s_to_z_simple_values():
    np.testing.assert_allclose(s_to_z(np.zeros((3, 3))), 50 * np.eye(3), atol=1e-13)
    np.testing.assert_allclose(s_to_z(0.5 * np.eye(2)), 150 * np.eye(2), atol=1e-12)


def test_singular_conversions_raise():
    with pytest.raises(ConversionError, match="Z"):
        z_to_s(-50 * np.eye(2))
    with pytest.raises(ConversionError):
        s_to_z(np.eye(3))


@given(st.integers(0, 2**32 - 1), st.integers(2, 10))
def test_lossless_reciprocal_network_is_unitary_symmetric(seed, n):
    rng = make_rng(seed)
    b = rng.standard_normal((n, n))
    s = z_to_s(1j * 50 * (b + b.T))
    np.testing.assert_allclose(s.conj().T @ s, np.eye(n), atol=1e-10)
    np.testing.assert_allclose(s, s.T, atol=1e-10)


@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_round_trip(seed, n):
    rng = make_rng(seed)
    s = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    s *= 0.95 / np.linalg.norm(s, 2)
    np.testing.assert_allclose(z_to_s(s_to_z(s)), s, atol=1e-10)


def test_isolated_ports_give_zero_channel():
    layout = PortLayout(1, 1, 4, 1, 1)
    theta = random_unitary(4, make_rng(0))
    h = general_channel(np.zeros((layout.n, layout.n)), TerminationSpec.matched(layout, theta), layout)
    assert np.array_equal(h, np.zeros((2, 2)))


@pytest.mark.parametrize("n_i", [2, 4, 8])
def test_result2_matches_general_channel(n_i):
    layout = PortLayout(1, 1, n_i, 1, 1)
    rng = make_rng(n_i)
    for _ in range(20):
        zb = random_impedance_blocks(layout, rng, self_interference=False)
        theta = random_unitary(n_i, rng)
        h = general_channel(z_to_s(zb.full()), TerminationSpec.matched(layout, theta), layout)
        np.testing.assert_allclose(simplified_channel_result2(*channel_blocks(zb), theta), h, atol=1e-9)


@pytest.mark.parametrize("layout", [PortLayout(1, 1, 4, 1, 1), PortLayout(2, 1, 3, 1, 2)])
def test_result1_matches_general_channel_with_self_interference(layout):
    rng = make_rng(7)
    for _ in range(20):
        zb = random_impedance_blocks(layout, rng, self_interference=True)
        theta = random_unitary(layout.n_i, rng)
        h = general_channel(z_to_s(zb.full()), TerminationSpec.matched(layout, theta), layout)
        h1 = simplified_channel_result1(scattering_from_impedance_result1(zb, layout), theta)
        np.testing.assert_allclose(h1, h, atol=1e-9)


def test_result1_with_zero_theta():
    layout = PortLayout(1, 1, 4, 1, 1)
    zb = random_impedance_blocks(layout, make_rng(3))
    theta = np.zeros((4, 4))
    h = general_channel(z_to_s(zb.full()), TerminationSpec.matched(layout, theta), layout)
    h1 = simplified_channel_result1(scattering_from_impedance_result1(zb, layout), theta)
    np.testing.assert_allclose(h1, h, atol=1e-9)


def test_result1_reduces_to_result2_mappings_without_self_interference():
    layout = PortLayout(1, 1, 4, 1, 1)
    zb = random_impedance_blocks(layout, make_rng(5), self_interference=False)
    ds = scattering_from_impedance_result1(zb, layout)
    z0 = zb.z0
    for blk in (ds.s_tt, ds.s_ti, ds.s_ii):
        assert np.array_equal(blk, np.zeros_like(blk))
    np.testing.assert_allclose(ds.s_it, zb.z_it / (2 * z0), atol=1e-15)
    np.testing.assert_allclose(ds.s_ri, zb.z_ri / (2 * z0), atol=1e-15)
    np.testing.assert_allclose(ds.s_rt, zb.z_rt / (2 * z0) - zb.z_ri @ zb.z_it / (4 * z0**2), atol=1e-15)
    theta = random_unitary(4, make_rng(6))
    np.testing.assert_allclose(simplified_channel_result1(ds, theta), ds.s_rt + ds.s_ri @ theta @ ds.s_it,
                               atol=1e-15)


def test_result1_mapping_is_linear_in_coupling():
    layout = PortLayout(1, 1, 4, 1, 1)
    zb = random_impedance_blocks(layout, make_rng(8), self_interference=False)
    a = scattering_from_impedance_result1(zb, layout)
    b = scattering_from_impedance_result1(zb.scaled(z_it=2, z_ri=2, z_rt=2), layout)
    np.testing.assert_allclose(b.s_it, 2 * a.s_it, rtol=1e-14)
    np.testing.assert_allclose(b.s_ri, 2 * a.s_ri, rtol=1e-14)


def test_result1_rejects_unmatched_antennas():
    layout = PortLayout(1, 1, 4, 1, 1)
    zb = random_impedance_blocks(layout, make_rng(9))
    with pytest.raises(AssumptionError):
        scattering_from_impedance_result1(zb.scaled(z_tt=2), layout)


def test_result2_identity_theta_leaves_direct_link():
    rng = make_rng(10)
    h_rt, h_ri, h_it = (rng.standard_normal(s) + 1j * rng.standard_normal(s) for s in ((2, 2), (2, 5), (5, 2)))
    assert np.array_equal(simplified_channel_result2(h_rt, h_ri, h_it, np.eye(5)), h_rt)


def test_result2_structural_scattering_path():
    rng = make_rng(11)
    h_ri, h_it = (rng.standard_normal(s) + 1j * rng.standard_normal(s) for s in ((2, 5), (5, 2)))
    h = simplified_channel_result2(np.zeros((2, 2)), h_ri, h_it, np.zeros((5, 5)))
    np.testing.assert_allclose(h, -h_ri @ h_it, atol=1e-15)


def test_result2_shape_mismatch():
    with pytest.raises(ValueError):
        simplified_channel_result2(np.zeros((2, 2)), np.zeros((2, 4)), np.zeros((5, 2)), np.eye(4))


def test_general_channel_singular_inner_matrix():
    layout = PortLayout(1, 1, 1, 1, 1)
    s = np.zeros((layout.n, layout.n))
    s[2, 2] = 1.0  # RIS port reflects fully back into a unit RIS load
    term = TerminationSpec.matched(layout, np.eye(1))
    with pytest.raises(ModelError):
        general_channel(s, term, layout)


def test_impedance_blocks_full_round_trip():
    layout = PortLayout(2, 1, 3, 1, 2)
    zb = random_impedance_blocks(layout, make_rng(12))
    back = ImpedanceBlocks.from_full(zb.full(), layout, zb.z0)
    assert np.array_equal(back.full(), zb.full())


@given(st.integers(0, 2**32 - 1), st.integers(1, 16))
def test_random_unitary_is_unitary(seed, n):
    u = network.random_unitary(n, make_rng(seed))
    np.testing.assert_allclose(u.conj().T @ u, np.eye(n), atol=1e-12)

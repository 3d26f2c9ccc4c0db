# Copyright 2026 The teamdyn Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import teamdyn as td


def xor_xor(kernel=None):
    xor = td.builtin("xor", 2)
    return td.TeamGame(xor, xor, kernel or td.matching_pennies())


def test_expectation_matches_oracle():
    rng = np.random.default_rng(7)
    for arity in range(1, 6):
        f = td.BooleanFunction(arity, list(rng.integers(0, 2, 2**arity)))
        x = list(rng.uniform(size=arity))
        assert td.expectation(f, x) == pytest.approx(td.oracle.expectation(f, x), abs=1e-14)


def test_known_values():
    assert td.expectation(td.builtin("xor", 2), [0.3, 0.75]) == pytest.approx(0.6)
    assert td.expectation(td.builtin("or", 2), [0.3, 0.75]) == pytest.approx(0.775)
    k = td.PayoffKernel(3, 1, 2, 4)
    game = td.TeamGame(td.builtin("id", 1), td.builtin("id", 1), k)
    assert (game.alpha, game.p, game.q, game.value) == pytest.approx((4, 0.5, 0.75, 2.5))


def test_field_matches_oracle_and_raw_scaling():
    game = xor_xor()
    z = [0.65, 0.66, 0.3, 0.75]
    rescaled = td.field(game, z)
    raw = td.field(game, z, td.FieldKind.RAW)
    np.testing.assert_allclose(rescaled, td.oracle.field(game, z), atol=1e-14)
    np.testing.assert_allclose(raw, game.alpha * rescaled, atol=1e-14)


def test_integrate_returns_arrays():
    cfg = td.IntegratorConfig(max_time=5.0, sample_interval=0.5)
    traj = td.integrate(xor_xor(), [0.65, 0.66], [0.3, 0.75], cfg)
    assert len(traj) == 11
    assert traj.states.shape == (11, 4)
    np.testing.assert_allclose(traj.t, np.arange(11) * 0.5)
    assert np.all((traj.states >= 0) & (traj.states <= 1))
    assert traj.uA.shape == traj.f.shape == traj.g.shape == (11,)


def test_single_gene_period_and_conserved_quantity():
    ident = td.builtin("identity", 1)
    game = td.TeamGame(ident, ident)
    cfg = td.IntegratorConfig(max_time=100.0, abs_tol=1e-12, rel_tol=1e-12)
    est = td.detect_period(game, [0.9], [0.5], cfg)
    assert est is not None
    assert est.return_error < 1e-6
    traj = td.integrate(game, [0.9], [0.5], cfg)
    h = [td.closed_form_H_single_gene(0.5, 0.5, f, g) for f, g in zip(traj.f, traj.g)]
    assert max(h) - min(h) < 1e-8


def test_fixed_point_classification():
    report = td.classify_fixed_point(xor_xor(), [0.5, 0.5, 0.5, 0.5])
    assert report.is_fixed
    assert "strange" in report.kinds


def test_time_averages_and_ce():
    game = xor_xor(td.rescaled_matching_pennies())
    cfg = td.IntegratorConfig(max_time=400.0, abs_tol=1e-11, rel_tol=1e-11)
    est = td.detect_period(game, [0.65, 0.66], [0.3, 0.75], cfg)
    traj = td.integrate(game, [0.65, 0.66], [0.3, 0.75],
                        td.IntegratorConfig(max_time=10 * est.period, abs_tol=1e-11, rel_tol=1e-11))
    avg = td.time_averages(game, traj, True, est.period, True)
    assert avg.f_bar == pytest.approx(0.5, abs=1e-3)
    assert avg.g_bar == pytest.approx(0.5, abs=1e-3)
    cert = td.certify_correlated_equilibrium(game, list(avg.profile), 1e-4)
    assert cert.is_ce


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        td.BooleanFunction(2, [0, 1, 1])
    with pytest.raises(td.InputError):
        td.TeamGame(td.builtin("xor", 2), td.builtin("xor", 2), td.PayoffKernel(1, 1, 1, 1))
    with pytest.raises(td.InputError):
        td.detect_period(xor_xor(), [0.5, 0.5], [0.5, 0.5])
    with pytest.raises(td.DomainError):
        td.closed_form_H_single_gene(0.5, 0.5, 0.0, 0.5)


def test_subsystem_output_increases():
    sub = td.integrate_subsystem(td.builtin("majority", 3), [0.4, 0.6, 0.7],
                                 td.IntegratorConfig(max_time=500.0), stop_rate=1e-9)
    assert np.all(np.diff(sub.f) > 0)
    assert math.isclose(sub.f[-1], 1.0, abs_tol=1e-6)

import os

os.environ.setdefault("MATSUSY_LOG_FILE", "")

import numpy as np
import pytest

from matsusy.core.catalog import FAMILIES


def _angle_r(rng, omega):
    theta = rng.uniform(0, 2 * np.pi)
    return {"omega": omega, "r2": omega * np.cos(theta), "r3": omega * np.sin(theta)}


def draw_family_params(tag, rng):
    """每个族的一组随机合法参数"""
    u = rng.uniform
    if tag in ("W1", "W2", "W3", "W4"):
        params = {"lam": u(0.5, 1.5), "c": u(-0.5, 0.5), "mu": u(-1, 1)}
        params.update(_angle_r(rng, u(0.5, 2)))
    elif tag in ("W5", "W6"):
        params = {"lam": u(0.5, 1.5), "mu": u(-1, 1)}
        params.update(_angle_r(rng, u(0.5, 2)))
    elif tag == "W7":
        params = {"c": u(-0.8, 0.8), "mu": u(-1, 1)}
        params.update(_angle_r(rng, u(0.5, 2)))
    elif tag == "W8":
        params = {"mu": u(-1, 1)}
        params.update(_angle_r(rng, u(0.5, 2)))
    elif tag == "W9":
        params = {"lam": u(0.5, 1.2), "mu": u(-1, 1), "omega": u(0.5, 2)}
    elif tag in ("W10", "W11", "W12", "W13"):
        params = {"lam": u(0.5, 1.5), "c": u(-0.5, 0.5), "mu": u(-1, 1), "nu": u(-1, 1), "tau": u(-1, 1)}
    elif tag in ("W14", "W15"):
        params = {"lam": u(0.5, 1.5), "mu": u(-1, 1), "nu": u(-1, 1)}
    elif tag == "W16":
        params = {"c": u(-0.8, 0.8), "delta": u(-1, 1), "omega": u(-2, 2), "mu": u(-1, 1)}
    elif tag == "W17":
        params = {"omega": u(-2, 2), "mu": u(-1, 1), "c": u(-1, 1)}
    elif tag in ("T1", "T5"):
        params = {"c1": u(0.2, 1.5), "c2": u(0.2, 1.5), "mu1": u(-1, 1), "mu2": u(-1, 1)}
        if tag == "T1":
            params["omega"] = u(0.5, 2)
        else:
            params["mu3"] = u(-1, 1)
    elif tag in ("T2", "T3", "T6"):
        params = {"c": u(0.2, 1.5), "mu1": u(-1, 1), "mu2": u(-1, 1)}
        if tag == "T6":
            params["mu3"] = u(-1, 1)
        else:
            params["omega"] = u(0.5, 2)
    elif tag == "T4":
        params = {"c": u(-1, 1), "mu": u(-1, 1), "omega": u(0.5, 2)}
    elif tag == "T7":
        params = {"c": u(-1, 1), "mu1": u(-1, 1), "mu2": u(-1, 1)}
    else:
        raise KeyError(tag)
    assert set(params) <= set(FAMILIES[tag].parameters)
    return {k: float(v) for k, v in params.items()}


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def family_params():
    return draw_family_params


@pytest.fixture
def random_kappa(rng):
    return float(rng.uniform(1.2, 3.0))

"""
Tests for the HTTP API.
"""
import math

import pytest
from fastapi.testclient import TestClient

from main import app

client = TestClient(app)
API = "/api/v1"


def test_root():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["message"] == "hadamard-flow API"


def test_health():
    assert client.get("/health").json() == {"status": "healthy", "service": "hadamard-flow"}


class TestClassify:
    def test_verdict(self):
        response = client.post(f"{API}/classify", json={"operator": "euler: i*theta^2"})
        assert response.status_code == 200
        data = response.json()
        assert data["verdict"] == "NotGenerates"
        assert data["reason"] == "NegCase2"

    def test_parse_error(self):
        response = client.post(f"{API}/classify", json={"operator": "euler: theta $"})
        assert response.status_code == 400
        assert "position 13" in response.json()["detail"]

    def test_empty_operator(self):
        response = client.post(f"{API}/classify", json={"operator": ""})
        assert response.status_code == 422


class TestEvolve:
    def test_explicit_series(self):
        payload = {
            "operator": "hardy: 1",
            "t": -1.0,
            "series": {"order": 2, "coeffs": [[1, 0], [2, 0], [3, 0]]},
        }
        response = client.post(f"{API}/evolve", json=payload)
        assert response.status_code == 200
        coeffs = response.json()["series"]["coeffs"]
        assert [c[0] for c in coeffs] == pytest.approx([math.exp(-1) * k for k in (1, 2, 3)])

    def test_negative_time_needs_group(self):
        response = client.post(f"{API}/evolve", json={"operator": "euler: i*theta^2", "t": -1.0})
        assert response.status_code == 409

    def test_series_length_validated(self):
        payload = {"operator": "hardy: 1", "t": 1.0, "series": {"order": 3, "coeffs": [[1, 0]]}}
        assert client.post(f"{API}/evolve", json=payload).status_code == 422


def test_poles():
    response = client.post(f"{API}/poles", json={"operator": "euler: theta", "t": 0.5})
    assert response.status_code == 200
    data = response.json()
    assert data["all_real"] is True
    assert data["poles"][0]["re"] == pytest.approx(math.exp(-0.5), rel=1e-8)


def test_verify():
    response = client.post(f"{API}/verify", json={"operator": "hardy: 1"})
    assert response.status_code == 200
    data = response.json()
    assert data["passed"] is True
    assert data["verdict"]["reason"] == "HardyGroup"


class TestMellin:
    def test_hardy(self):
        response = client.post(f"{API}/mellin", json={"operator": "hardy: 1/(n+1)", "t": 1.0})
        assert response.status_code == 200
        data = response.json()
        assert data["bound_holds"] is True
        assert data["metadata"]["K_rule"] == "K_n = n"

    def test_euler_rejected(self):
        response = client.post(f"{API}/mellin", json={"operator": "euler: theta"})
        assert response.status_code == 400

    def test_weight_validated(self):
        response = client.post(f"{API}/mellin", json={"operator": "hardy: 1", "a": 0})
        assert response.status_code == 422

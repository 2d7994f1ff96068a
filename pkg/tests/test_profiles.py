from __future__ import annotations

import json

import pytest

from inquest.agents import AgentKind
from inquest.controller import ControllerMode
from inquest.errors import InvalidParams
from inquest.harness.profiles import (
    CONFIG_DIR_ENV,
    load_profile,
    method_names,
    resolve_method,
)


def test_default_profile_methods():
    profile = load_profile()
    assert set(method_names(profile)) == {
        "soft_fsm",
        "pure_model",
        "stage_prompt_model",
        "equilibria_model",
    }


def test_default_knobs():
    profile = load_profile()
    agent, controller = resolve_method(profile, "pure_model")
    assert agent.kind is AgentKind.PURE_MODEL
    assert agent.epsilon == 0.35
    assert agent.unknown_bias == 0.8
    assert controller.mode is ControllerMode.PASS_THROUGH

    agent, controller = resolve_method(profile, "soft_fsm")
    assert agent.kind is AgentKind.SOFT_FSM
    assert agent.epsilon == 0.0
    assert controller.mode is ControllerMode.SOFT_FSM

    agent, _ = resolve_method(profile, "stage_prompt_model")
    assert agent.epsilon == 0.5
    assert agent.redundancy_bias == 0.85

    agent, _ = resolve_method(profile, "equilibria_model")
    assert agent.recovery_prob == 0.3
    assert agent.epsilon == 0.35


def test_turn_budget_passthrough():
    profile = load_profile()
    _, controller = resolve_method(profile, "soft_fsm", turn_budget=55)
    assert controller.turn_budget == 55


def test_unknown_method_rejected():
    with pytest.raises(InvalidParams, match="not in profile"):
        resolve_method(load_profile(), "transformer_xxl")


def test_unknown_profile_without_config_dir(monkeypatch):
    monkeypatch.delenv(CONFIG_DIR_ENV, raising=False)
    with pytest.raises(InvalidParams, match="tuned"):
        load_profile("tuned")


def test_config_dir_override(monkeypatch, tmp_path):
    custom = {
        "name": "tuned",
        "methods": {
            "gentle": {
                "agent": {"kind": "pure_model", "epsilon": 0.05},
                "controller": {"mode": "pass_through", "stall_abort": 4},
            }
        },
    }
    (tmp_path / "tuned.json").write_text(json.dumps(custom))
    monkeypatch.setenv(CONFIG_DIR_ENV, str(tmp_path))
    profile = load_profile("tuned")
    agent, controller = resolve_method(profile, "gentle")
    assert agent.epsilon == 0.05
    assert controller.stall_abort == 4


def test_config_dir_missing_profile(monkeypatch, tmp_path):
    monkeypatch.setenv(CONFIG_DIR_ENV, str(tmp_path))
    with pytest.raises(InvalidParams, match="no profile"):
        load_profile("absent")


def test_config_dir_shadows_default(monkeypatch, tmp_path):
    shadow = {
        "methods": {
            "soft_fsm": {
                "agent": {"kind": "soft_fsm"},
                "controller": {"mode": "soft_fsm"},
            }
        }
    }
    (tmp_path / "default.json").write_text(json.dumps(shadow))
    monkeypatch.setenv(CONFIG_DIR_ENV, str(tmp_path))
    assert method_names(load_profile()) == ("soft_fsm",)

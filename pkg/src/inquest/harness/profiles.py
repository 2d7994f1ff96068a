"""Named calibration profiles mapping method names to configs.

A profile is a JSON document binding each method name ("soft_fsm",
"pure_model", ...) to an agent config and a controller mode.  The
bundled "default" profile ships in the package data; setting the
INQUEST_CONFIG_DIR environment variable points profile lookup at a
directory of `<name>.json` files instead, so experiments can be re-run
with different knobs without touching the install.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from ..agents import AgentConfig, AgentKind
from ..controller import ControllerConfig, ControllerMode
from ..errors import InvalidParams

CONFIG_DIR_ENV = "INQUEST_CONFIG_DIR"


def load_profile(name: str = "default") -> dict:
    config_dir = os.environ.get(CONFIG_DIR_ENV)
    if config_dir:
        path = Path(config_dir) / f"{name}.json"
        if not path.is_file():
            raise InvalidParams(f"no profile {name!r} in {config_dir}")
        return json.loads(path.read_text("utf-8"))
    if name != "default":
        raise InvalidParams(
            f"unknown profile {name!r}; set {CONFIG_DIR_ENV} to use custom profiles"
        )
    text = resources.files("inquest.data").joinpath("default_profile.json").read_text("utf-8")
    return json.loads(text)


def method_names(profile: dict) -> tuple[str, ...]:
    return tuple(profile.get("methods", {}))


def resolve_method(
    profile: dict, method: str, turn_budget: int | None = None
) -> tuple[AgentConfig, ControllerConfig]:
    try:
        entry = profile["methods"][method]
    except KeyError:
        raise InvalidParams(
            f"method {method!r} not in profile; have {sorted(profile.get('methods', {}))}"
        )
    agent_doc = dict(entry.get("agent", {}))
    kind = AgentKind(agent_doc.pop("kind"))
    agent = AgentConfig(kind=kind, **agent_doc)
    controller_doc = entry.get("controller", {})
    controller = ControllerConfig(
        mode=ControllerMode(controller_doc.get("mode", "soft_fsm")),
        turn_budget=turn_budget,
        stall_abort=controller_doc.get("stall_abort"),
    )
    return agent, controller

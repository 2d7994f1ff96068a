"""Well-behaved external agent used by the bridge tests.

Targets the first unmet mandatory unit of the current stage (falling back
to the first unmet unit overall), mirroring the built-in staged inquirer's
decision rule so traces can be compared decision-for-decision.
"""
from __future__ import annotations

import json
import sys


def main() -> int:
    for line in sys.stdin:
        message = json.loads(line)
        kind = message.get("type")
        if kind == "hello":
            print(json.dumps({"type": "ready"}), flush=True)
        elif kind == "view":
            targets = message["unmet_mandatory"] or message["unmet_all"]
            unit_id = targets[0]
            catalog = {entry["id"]: entry for entry in message["kiu_catalog"]}
            entry = catalog[unit_id]
            reply = {
                "type": "question",
                "text": f"Could you walk me through {entry['description']}?",
                "target_keys": [entry["answer_key"]],
            }
            print(json.dumps(reply), flush=True)
        elif kind == "end":
            return 0
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

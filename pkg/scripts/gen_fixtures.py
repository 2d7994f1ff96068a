#!/usr/bin/env python
"""Author the bundled case fixtures (schemas + matching fact bases).

Run from the repository root:

    python scripts/gen_fixtures.py

Output is written to src/inquest/data/ and committed; the package loads
the JSON at runtime, not this script.  The three cases grade structural
difficulty: case_a is a plain chain, case_b adds diamond-shaped stage
dependencies, case_c is deeper with dense cross-stage requirements.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "inquest" / "data"

CASES = {
    "case_a": {
        "stages": [
            ("S1", "Parties and Identification", []),
            ("S2", "Incident Account", ["S1"]),
            ("S3", "Damages and Treatment", ["S2"]),
            ("S4", "Liability Factors", ["S3"]),
            ("S5", "Resolution Posture", ["S4"]),
        ],
        "topics": {
            "S1": [
                "the full name of the claimant",
                "the claimant's date of birth",
                "the claimant's residential address",
                "a daytime contact number",
                "the claimant's occupation",
                "the relationship between claimant and respondent",
                "the identity of any witnesses present",
                "whether the claimant is represented",
            ],
            "S2": [
                "the date of the incident",
                "the approximate time of day",
                "the precise location",
                "the weather and visibility conditions",
                "the sequence of events as experienced",
                "the vehicles or objects involved",
                "the immediate actions taken afterwards",
                "to whom the incident was first reported",
            ],
            "S3": [
                "the injuries sustained",
                "the medical treatment received so far",
                "the treatment costs incurred to date",
                "any damage to property",
                "income lost because of the incident",
                "symptoms that are still ongoing",
                "any prior conditions in the affected area",
                "which receipts or invoices are available",
            ],
            "S4": [
                "the duty the respondent allegedly owed",
                "how that duty was allegedly breached",
                "the causal link between breach and harm",
                "any conduct by the claimant that contributed",
                "insurance policies that may respond",
                "warnings given before the incident",
                "any third party said to share responsibility",
                "which points the respondent disputes",
            ],
            "S5": [
                "settlement attempts made so far",
                "the amount currently claimed",
                "the remedy the claimant seeks",
                "willingness to attempt mediation",
                "any deadline or limitation concerns",
                "the claimant's preferred practical outcome",
                "anticipated difficulties enforcing an award",
                "documents still outstanding",
            ],
        },
    },
    "case_b": {
        "stages": [
            ("S1", "Intake and Background", []),
            ("S2", "Employment History", ["S1"]),
            ("S3", "Workplace Conditions", ["S1"]),
            ("S4", "Termination Events", ["S2", "S3"]),
            ("S5", "Financial Impact", ["S4"]),
            ("S6", "Remedies Sought", ["S5"]),
        ],
        "topics": {
            "S1": [
                "the worker's full name",
                "the employing entity's registered name",
                "the worksite address",
                "the date employment began",
                "the written or oral form of the contract",
                "the governing award or agreement, if any",
                "union membership status",
            ],
            "S2": [
                "the position first held",
                "each subsequent change of role",
                "the final position held",
                "ordinary hours actually worked",
                "the most recent rate of pay",
                "performance reviews on record",
                "prior disciplinary history",
            ],
            "S3": [
                "the physical conditions of the worksite",
                "equipment the worker was required to use",
                "training provided for that equipment",
                "supervision arrangements in practice",
                "complaints raised about conditions",
                "responses management gave to complaints",
                "records kept of workplace incidents",
            ],
            "S4": [
                "the date employment ended",
                "who communicated the termination",
                "the reason stated at the time",
                "any written notice provided",
                "events in the fortnight preceding termination",
                "whether a warning process preceded it",
                "who else was dismissed around the same time",
            ],
            "S5": [
                "wages outstanding at termination",
                "entitlements paid out, if any",
                "income earned since termination",
                "efforts made to find comparable work",
                "out-of-pocket expenses caused by the dismissal",
                "superannuation contributions in arrears",
                "benefits in kind lost with the role",
            ],
            "S6": [
                "whether reinstatement is sought",
                "the compensation amount claimed",
                "any apology or reference sought",
                "willingness to settle before hearing",
                "prior offers exchanged between the parties",
                "orders sought against individuals",
                "interest in a non-financial resolution",
            ],
        },
    },
    "case_c": {
        "stages": [
            ("S1", "Commercial Background", []),
            ("S2", "Agreement Formation", ["S1"]),
            ("S3", "Performance History", ["S1", "S2"]),
            ("S4", "Breach Allegations", ["S2", "S3"]),
            ("S5", "Counterclaims", ["S1", "S3", "S4"]),
            ("S6", "Quantum", ["S4", "S5"]),
            ("S7", "Relief and Strategy", ["S3", "S5", "S6"]),
        ],
        "topics": {
            "S1": [
                "the nature of each party's business",
                "how the parties first came to deal",
                "prior transactions between them",
                "the commercial purpose of the arrangement",
                "key personnel on each side",
                "any related entities involved",
                "the market context at the time",
            ],
            "S2": [
                "when the agreement was concluded",
                "the documents said to record it",
                "terms agreed orally, if any",
                "the price or consideration fixed",
                "delivery or performance milestones",
                "variation mechanisms the parties adopted",
                "conditions precedent to performance",
            ],
            "S3": [
                "performance rendered in the first period",
                "invoices issued and their fate",
                "acceptance or rejection of deliverables",
                "notices exchanged during performance",
                "departures from the agreed schedule",
                "remedial work undertaken",
                "the state of accounts between the parties",
            ],
            "S4": [
                "each term said to have been breached",
                "the conduct constituting each breach",
                "when each breach was discovered",
                "notices of breach given",
                "opportunities to cure offered",
                "the response received to each notice",
            ],
            "S5": [
                "the counterclaims foreshadowed",
                "facts relied on for each counterclaim",
                "set-offs asserted against the claim",
                "the quantum attributed to counterclaims",
                "documents supporting the counterclaims",
                "limitation issues affecting them",
            ],
            "S6": [
                "direct losses itemised",
                "consequential losses claimed",
                "the method used to quantify loss",
                "mitigation steps taken",
                "expert evidence available on quantum",
                "interest and costs positions",
            ],
            "S7": [
                "the primary relief sought",
                "alternative relief acceptable",
                "urgency or interlocutory needs",
                "the preferred forum and governing law",
                "appetite for alternative dispute resolution",
                "constraints on publicity or confidentiality",
            ],
        },
    },
}


def build_case(case_id: str, spec: dict) -> tuple[dict, dict]:
    stages = [
        {"id": sid, "name": name, "requires": list(reqs)}
        for sid, name, reqs in spec["stages"]
    ]
    kius = []
    facts = {}
    for sid, _name, _reqs in spec["stages"]:
        for j, topic in enumerate(spec["topics"][sid], start=1):
            kid = f"{sid.lower()}k{j}"
            key = f"{kid}_fact"
            kius.append(
                {
                    "id": kid,
                    "description": topic,
                    "stage_id": sid,
                    "answer_key": key,
                    "mandatory": True,
                }
            )
            facts[key] = f"Recorded statement covering {topic} (file entry {kid.upper()})."
    schema_doc = {"version": 1, "case_id": case_id, "stages": stages, "kius": kius}
    facts_doc = {"case_id": case_id, "facts": facts}
    return schema_doc, facts_doc


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    expected = {"case_a": 40, "case_b": 42, "case_c": 45}
    for case_id, spec in CASES.items():
        schema_doc, facts_doc = build_case(case_id, spec)
        count = len(schema_doc["kius"])
        if count != expected[case_id]:
            print(f"{case_id}: expected {expected[case_id]} units, built {count}")
            return 1
        (OUT_DIR / f"{case_id}.schema.json").write_text(
            json.dumps(schema_doc, indent=2) + "\n"
        )
        (OUT_DIR / f"{case_id}.facts.json").write_text(
            json.dumps(facts_doc, indent=2) + "\n"
        )
        print(f"wrote {case_id}: {len(schema_doc['stages'])} stages, {count} units")
    return 0


if __name__ == "__main__":
    sys.exit(main())

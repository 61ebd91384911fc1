#!/usr/bin/env python3
"""Regenerates the generated test fixtures under tests/fixtures.

Outputs:
  coding/problem_causes.json           survey-style codebook with axial edges
  coding/clone_categories.json clone categories coded on the RFC excerpts
  treemap/specifications.json          28 specifications with clone coverage
"""

import json
import pathlib
import re

ROOT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

PROBLEMS = ["RE Problems"]
IMPL_RE = ["Implications", "RE Phase"]
IMPL_SW = ["Implications", "SW Life Cycle"]
IMPL_Q = ["Implications", "Overall SW Project Quality"]
RATIONALE = ["Reasoning", "Rationale", "Factors in RE"]
GENERAL = ["Reasoning", "Rationale", "General Factors"]
MITIGATION = ["Reasoning", "Improvement/Mitigation"]

# (id, name, category path, occurrences)
CAUSE_CODES = [
    ("incomplete_requirements", "Incomplete / Hidden Requirements", PROBLEMS, 17),
    ("time_boxing", "Time Boxing", PROBLEMS, 11),
    ("moving_targets", "Moving Targets", PROBLEMS, 9),
    ("weak_communication", "Weak Communication", PROBLEMS, 6),
    ("underspecified_requirements", "Underspecified Requirements", PROBLEMS, 5),
    ("change_request", "Change Request", IMPL_SW, 22),
    ("additional_communication", "Additional Communication and Replanning", IMPL_RE, 13),
    ("stagnating_process", "Stagnating Process", IMPL_RE, 8),
    ("failed_acceptance", "Failed Acceptance", IMPL_SW, 4),
    ("customer_dissatisfaction", "Customer Dissatisfaction", IMPL_Q, 3),
    ("weak_relationship", "Weak Relationship Customer & Project Lead", IMPL_Q, 1),
    ("too_ambitious_planning", "Too Ambitious Time Planning", GENERAL, 3),
    ("missing_abstraction", "Missing Abstraction from Solution Level", RATIONALE, 2),
    ("no_re_planned", "No RE explicitly planned (in tendering)", GENERAL, 1),
    ("implicit_requirements", "Implicit Requirements not made explicit", RATIONALE, 2),
    ("missing_coordination", "Missing Coordination of Interdisciplinary Teams", GENERAL, 1),
    ("early_prototyping", "Early Prototyping", MITIGATION, 2),
]

CAUSE_EDGES = [
    ("incomplete_requirements", "change_request", 9),
    ("incomplete_requirements", "additional_communication", 5),
    ("incomplete_requirements", "failed_acceptance", 3),
    ("time_boxing", "change_request", 4),
    ("time_boxing", "stagnating_process", 3),
    ("moving_targets", "change_request", 6),
    ("moving_targets", "additional_communication", 4),
    ("weak_communication", "additional_communication", 3),
    ("weak_communication", "stagnating_process", 2),
    ("underspecified_requirements", "customer_dissatisfaction", 2),
    ("weak_communication", "weak_relationship", 1),
    ("too_ambitious_planning", "time_boxing", 3),
    ("missing_abstraction", "underspecified_requirements", 2),
    ("no_re_planned", "incomplete_requirements", 1),
    ("implicit_requirements", "incomplete_requirements", 2),
    ("missing_coordination", "weak_communication", 1),
    ("early_prototyping", "moving_targets", 1),
]


def problem_causes():
    codes = [
        {"id": cid, "name": name, "rationale": f"Statements naming {name.lower()}.",
         "category_path": path}
        for cid, name, path, _ in CAUSE_CODES
    ]
    segments = []
    answer = 0
    # Interleave codes so that new codes keep appearing over the coding order.
    remaining = {cid: n for cid, _, _, n in CAUSE_CODES}
    while any(remaining.values()):
        for cid, _, _, _ in CAUSE_CODES:
            if remaining[cid]:
                answer += 1
                segments.append({"document_id": f"answer-{answer:03d}", "start": 0,
                                 "end": 40, "code_id": cid, "coder_id": "coder-1"})
                remaining[cid] -= 1
    edges = [{"from": a, "to": b, "kind": "causes", "weight": w} for a, b, w in CAUSE_EDGES]
    return {"codes": codes, "segments": segments, "axial_edges": edges,
            "core_category": "change_request"}


CLONE_CATEGORIES = [
    ("detailed_use_case_steps", "Detailed Use Case Steps"),
    ("reference", "Reference"),
    ("ui", "UI"),
    ("domain_knowledge", "Domain Knowledge"),
    ("interface_description", "Interface Description"),
    ("pre_condition", "Pre-Condition"),
    ("side_condition", "Side-Condition"),
    ("configuration", "Configuration"),
    ("feature", "Feature"),
    ("technical_domain_knowledge", "Technical Domain Knowledge"),
    ("post_condition", "Post-Condition"),
    ("rationale", "Rationale"),
]

# (document, anchor phrase, code)
CLONE_SEGMENTS = [
    ("rfc2616.txt", "Media Type name:         message", "interface_description"),
    ("rfc2616.txt", "Media Type name:         application", "interface_description"),
    ("rfc2616.txt", "Most HTTP communication is initiated", "domain_knowledge"),
    ("rfc2068.txt", "Most HTTP communication is initiated", "domain_knowledge"),
    ("rfc1945.txt", "Most HTTP communication is initiated", "domain_knowledge"),
    ("rfc2616.txt", "HTTP/1.0, as defined by RFC 1945", "reference"),
    ("rfc2068.txt", "HTTP/1.0, as defined by RFC 1945", "reference"),
    ("rfc2060.txt", "The IMAP4rev1 protocol assumes a reliable", "technical_domain_knowledge"),
    ("rfc3501.txt", "The IMAP4rev1 protocol assumes a reliable", "technical_domain_knowledge"),
    ("rfc2060.txt", "The client command begins an operation", "feature"),
    ("rfc3501.txt", "The client command begins an operation", "feature"),
    ("rfc1730.txt", "The client command begins an operation", "feature"),
    ("rfc2616.txt", "This response is cacheable", "configuration"),
    ("rfc2060.txt", "Before returning an OK to the client", "post_condition"),
    ("rfc3501.txt", "Before returning an OK to the client", "post_condition"),
    ("rfc2616.txt", "The request has succeeded", "detailed_use_case_steps"),
    ("rfc2068.txt", "The request has succeeded", "detailed_use_case_steps"),
    ("rfc1945.txt", "The request has succeeded", "detailed_use_case_steps"),
    ("rfc2617.txt", "The realm directive", "pre_condition"),
    ("rfc2818.txt", "When the TLS handshake has finished", "side_condition"),
    ("rfc2068.txt", "However, HTTP/1.0 does", "rationale"),
]


def clone_categories():
    codes = [{"id": cid, "name": name, "rationale": f"Cloned text that is {name.lower()}.",
              "category_path": ["Cloned Information"]}
             for cid, name in CLONE_CATEGORIES]
    segments = []
    for doc, anchor, code in CLONE_SEGMENTS:
        raw = (ROOT / "rfc" / doc).read_bytes()
        start = raw.find(anchor.encode())
        if start < 0:
            raise SystemExit(f"anchor not found in {doc}: {anchor}")
        para_end = raw.find(b"\n\n", start)
        end = len(raw) if para_end < 0 else para_end
        segments.append({"document_id": doc, "start": start, "end": end,
                         "code_id": code, "coder_id": "coder-1"})
    return {"codes": codes, "segments": segments, "axial_edges": [], "core_category": None}


# Spec, clone coverage in percent, clone groups, clones.
SPECIFICATIONS = """
H 71.6 71 360
F 51.1 50 162
A 35.0 259 914
G 22.1 60 262
Y 21.9 181 553
L 20.5 303 794
Z 19.6 50 117
C 18.5 37 88
K 18.1 19 55
U 15.5 85 237
X 12.4 21 45
AB 12.1 635 1818
V 11.2 201 485
B 8.9 265 639
N 8.2 159 373
D 8.1 105 479
P 5.8 5 10
I 5.5 7 15
AC 5.4 65 148
W 2.0 14 31
O 1.9 8 16
S 1.6 11 27
M 1.2 11 23
J 1.0 1 2
E 0.9 6 12
R 0.7 2 4
Q 0.0 0 0
T 0.0 0 0
"""


def specifications():
    rows = []
    for line in SPECIFICATIONS.strip().splitlines():
        spec, cov, groups, clones = re.split(r"\s+", line.strip())
        # Specification sizes are not published; clones + 1 keeps every area positive.
        rows.append({"id": spec, "size": int(clones) + 1, "color": round(float(cov) / 100, 4),
                     "clone_groups": int(groups), "clones": int(clones)})
    return rows


def write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def main():
    write(ROOT / "coding" / "problem_causes.json", problem_causes())
    write(ROOT / "coding" / "clone_categories.json", clone_categories())
    write(ROOT / "treemap" / "specifications.json", specifications())


if __name__ == "__main__":
    main()

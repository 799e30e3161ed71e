#!/usr/bin/env python3
# Copyright 2026 The GlossForge Authors.
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
"""Reference term linker. Prints mapping records as JSON lines."""

import argparse
import json
import re

SUBJECTS = [
    "mathematics", "linear algebra", "algebraic geometry", "calculus",
    "category theory", "commutative algebra", "field theory", "game theory",
    "topology", "differential geometry", "graph theory", "invariant theory",
    "group theory", "module theory", "order theory", "probability", "statistics",
    "ring theory", "representation theory", "set theory", "string theory",
    "symplectic geometry", "tensor theory",
]
MAX_HOPS = 8
WS = " \t\n\r\f\v"


def normalize(title):
    t = re.sub(r"[ \t\n\r\f\v]+", "_", title.strip(WS))
    if t and "a" <= t[0] <= "z":
        t = t[0].upper() + t[1:]
    return t


def read_rows(path):
    with open(path, encoding="utf-8") as f:
        for line in f.read().splitlines():
            if line.strip(WS):
                yield line.split("\t")


class Index:
    def __init__(self, titles, redirects):
        self.pages = {}
        for cols in read_rows(titles):
            self.pages[normalize(cols[0])] = (cols[1], len(cols) > 2 and cols[2] == "D")
        self.redirects = {}
        for cols in read_rows(redirects):
            src = normalize(cols[0])
            if src not in self.pages:
                self.redirects[src] = normalize(cols[1])

    def lookup(self, title):
        cur = normalize(title)
        if not cur:
            return None
        for _ in range(MAX_HOPS + 1):
            if cur in self.pages:
                return self.pages[cur]
            if cur not in self.redirects:
                return None
            cur = self.redirects[cur]
        return None


def link(term, corpus, index, overrides):
    term = term.strip(WS)
    rec = {"corpus": corpus, "term": term, "qid": None, "strategy": "unmapped", "tried": []}
    for key in ((corpus, term), ("*", term)):
        if key in overrides:
            qid = overrides[key]
            rec["qid"] = qid
            rec["strategy"] = "override" if qid else "unmapped"
            return rec
    saw_d = False
    for title, strategy in [(f"{term} ({s})", f"parenthetical({s})") for s in SUBJECTS] + \
            [(term, "bare")]:
        title = normalize(title)
        rec["tried"].append(title)
        hit = index.lookup(title)
        if hit is None:
            continue
        if hit[1]:
            saw_d = True
            continue
        rec["qid"] = hit[0]
        rec["strategy"] = strategy
        return rec
    if saw_d:
        rec["strategy"] = "disambiguation_rejected"
    return rec


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--titles", required=True)
    p.add_argument("--redirects", required=True)
    p.add_argument("--overrides", action="append", default=[])
    p.add_argument("--corpus", default="terms")
    p.add_argument("terms")
    args = p.parse_args()
    index = Index(args.titles, args.redirects)
    overrides = {}
    for path in args.overrides:
        for cols in read_rows(path):
            overrides[(cols[0].strip(WS), cols[1].strip(WS))] = \
                None if cols[2] == "NONE" else cols[2]
    with open(args.terms, encoding="utf-8") as f:
        for line in f.read().splitlines():
            if line.strip(WS):
                rec = link(line.split("\t")[0], args.corpus, index, overrides)
                print(json.dumps(rec, ensure_ascii=False, separators=(",", ":")))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Brute-force oracle for the toy benchmark.

Recomputes every gold answer set directly from the raw KB file with
per-question scripted logic (linear scans, no indexes, none of the C++
code), then checks the checked-in benchmark file against it. Run with
--emit to print a fresh benchmark file instead.
"""

import argparse
import sys
from datetime import date, timedelta


def parse_kb(path):
    facts = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if fields[0] == "F":
                facts.append(
                    {
                        "s": fields[1],
                        "p": fields[2],
                        "o": fields[3],
                        "c": None if fields[4] == "-" else fields[4],
                    }
                )
    return facts


def widen(iso, side):
    """YYYY[-MM[-DD]] -> datetime.date at the earliest/latest covered day."""
    parts = [int(x) for x in iso.split("-")]
    if len(parts) == 1:
        return date(parts[0], 1, 1) if side == "begin" else date(parts[0], 12, 31)
    if len(parts) == 2:
        if side == "begin":
            return date(parts[0], parts[1], 1)
        if parts[1] == 12:
            return date(parts[0], 12, 31)
        return date(parts[0], parts[1] + 1, 1) - timedelta(days=1)
    return date(*parts)


def compound_facts(facts, cid):
    return [f for f in facts if f["c"] == cid]


def stints(facts, player):
    """(club, join_date, left_date_or_None) per footballPlayer.team compound."""
    out = []
    for f in facts:
        if f["p"] == "footballPlayer.team" and f["s"] == player:
            join = left = None
            for g in compound_facts(facts, f["c"]):
                if g["p"].endswith("joinedOnDate"):
                    join = g["o"]
                if g["p"].endswith("leftOnDate"):
                    left = g["o"]
            out.append((f["o"], join, left))
    return out


def marriages(facts, person):
    out = []
    for f in facts:
        if f["p"] == "marriage.spouse" and f["s"] == person:
            when = None
            for g in compound_facts(facts, f["c"]):
                if g["p"] == "marriage.date":
                    when = g["o"]
            out.append((f["o"], when))
    return out


def captaincies(facts, team):
    out = []
    for f in facts:
        if f["p"] == "nationalTeam.captainOf" and f["o"] == team:
            start = end = None
            for g in compound_facts(facts, f["c"]):
                if g["p"].endswith("fromDate"):
                    start = g["o"]
                if g["p"].endswith("toDate"):
                    end = g["o"]
            out.append((f["s"], start, end))
    return out


def event_scope(facts, event):
    start = end = None
    for f in facts:
        if f["s"] != event:
            continue
        if f["p"] == "event.startDate":
            start = f["o"]
        if f["p"] == "event.endDate":
            end = f["o"]
    return start, end


FAR_FUTURE = date(9999, 12, 31)


def scope_of(join, left):
    begin = widen(join, "begin") if join else None
    end = widen(left, "end") if left else FAR_FUTURE
    return begin, end


def gold(facts):
    """question -> (answers, category); Table 2 rows applied non-strictly."""
    neymar = stints(facts, "neymar")
    roberts = marriages(facts, "julia_roberts")
    brazil = captaincies(facts, "brazil_team")
    cup_start, cup_end = event_scope(facts, "world_cup_2010")

    rows = []

    def add(question, answers, category):
        rows.append((question, sorted(answers), category))

    # explicit: the date in the question is the constraint interval
    add(
        "which team did neymar play for in 2010?",
        [c for (c, j, l) in neymar
         if scope_of(j, l)[0] <= widen("2010", "begin") <= scope_of(j, l)[1]],
        "explicit",
    )
    add(
        "which teams did neymar play for before 2014?",
        [c for (c, j, l) in neymar if l and widen(l, "end") <= widen("2014", "begin")],
        "explicit",
    )
    add(
        "who did julia roberts marry after 2000?",
        [s for (s, d) in roberts if widen(d, "begin") >= widen("2000", "end")],
        "explicit",
    )
    add(
        "where did neymar play in may 2013?",
        [c for (c, j, l) in neymar
         if scope_of(j, l)[0] <= widen("2013-05", "begin") <= scope_of(j, l)[1]],
        "explicit",
    )

    # implicit: the constraint comes from a sub-question about the KB
    psg_join = next(j for (c, j, l) in neymar if c == "psg")
    add(
        "which teams did neymar play for before joining psg?",
        [c for (c, j, l) in neymar if l and widen(l, "end") <= widen(psg_join, "begin")],
        "implicit",
    )
    add(
        "where did neymar play during south africa world cup?",
        [c for (c, j, l) in neymar
         if scope_of(j, l)[0] <= widen(cup_end, "end") <= scope_of(j, l)[1]],
        "implicit",
    )
    barca_join = next(j for (c, j, l) in neymar if c == "barcelona")
    add(
        "where did neymar play before he joined barcelona?",
        [c for (c, j, l) in neymar if l and widen(l, "end") <= widen(barca_join, "begin")],
        "implicit",
    )
    neymar_captain = next((s, e) for (p, s, e) in brazil if p == "neymar")
    add(
        "who was the brazil team captain before neymar?",
        [p for (p, s, e) in brazil
         if p != "neymar" and widen(e, "end") <= widen(neymar_captain[0], "begin")],
        "implicit",
    )

    # temporal answer: the date itself is the answer
    add("when did neymar join barcelona?", [barca_join], "temporal_answer")
    add("when did neymar join psg?", [psg_join], "temporal_answer")
    add(
        "when did the south africa world cup happen?",
        [cup_start, cup_end],
        "temporal_answer",
    )
    santos_join = next(j for (c, j, l) in neymar if c == "santos")
    add(
        "in what year did neymar join santos?",
        [santos_join.split("-")[0]],
        "temporal_answer",
    )

    # ordinal: chronological rank over the scoped candidates
    by_date = sorted(roberts, key=lambda sd: widen(sd[1], "begin"))
    add("who was the first spouse of julia roberts?", [by_date[0][0]], "ordinal")
    add("who was the second spouse of julia roberts?", [by_date[1][0]], "ordinal")
    by_join = sorted(neymar, key=lambda cjl: widen(cjl[1], "begin"))
    add("what was neymar's first team?", [by_join[0][0]], "ordinal")
    add("what was neymar's last team?", [by_join[-1][0]], "ordinal")

    return rows


def load_bench(path):
    rows = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            question, answers, category = line.split("\t")
            rows.append((question, sorted(answers.split("|")), category))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kb", required=True)
    parser.add_argument("--check", help="benchmark file to verify")
    parser.add_argument("--emit", action="store_true", help="print a fresh benchmark file")
    args = parser.parse_args()

    facts = parse_kb(args.kb)
    computed = gold(facts)

    if args.emit:
        for question, answers, category in computed:
            print(f"{question}\t{'|'.join(answers)}\t{category}")
        return 0

    if not args.check:
        parser.error("need --check or --emit")
    checked = load_bench(args.check)
    failures = 0
    oracle = {q: (a, c) for (q, a, c) in computed}
    if len(checked) != len(computed):
        print(f"MISMATCH: {len(checked)} benchmark rows, oracle computed {len(computed)}")
        failures += 1
    for question, answers, category in checked:
        if question not in oracle:
            print(f"MISMATCH: no oracle logic for: {question}")
            failures += 1
            continue
        expected_answers, expected_category = oracle[question]
        if answers != expected_answers or category != expected_category:
            print(
                f"MISMATCH: {question}\n  file:   {answers} {category}"
                f"\n  oracle: {expected_answers} {expected_category}"
            )
            failures += 1
    if failures:
        print(f"{failures} mismatch(es)")
        return 1
    print(f"all {len(checked)} gold rows agree with the brute-force oracle")
    return 0


if __name__ == "__main__":
    sys.exit(main())

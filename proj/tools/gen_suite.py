#!/usr/bin/env python3
"""Writes the bundled 15-case suite into suite/ (one manifest per case)."""

import argparse
import json
import pathlib


def atom(var, rel, value=None, **kw):
    a = {"var": var, "rel": rel}
    if value is not None:
        a["value"] = value
    a.update(kw)
    return a


def ref(var, rel, other, offset=0):
    a = {"var": var, "rel": rel, "ref": other}
    if offset:
        a["offset"] = offset
    return a


def rng(var, lo, hi):
    return {"var": var, "rel": "in-range", "lo": lo, "hi": hi}


def var(name, lo, hi, origin, kind="int", init=None):
    v = {"name": name, "kind": kind, "lo": lo, "hi": hi, "origin": origin}
    if init is not None:
        v["init"] = init
    return v


def read(ch):
    return {"op": "read", "channel": ch}


def branch(cond, target=""):
    return {"op": "branch", "cond": cond, "target": target}


def assign(dest, src, k=0):
    return {"op": "assign", "dest": dest, "expr": {"kind": "var", "var": src, "k": k}}


def sink(kind, trigger):
    return {"op": "sink", "kind": kind, "trigger": trigger}


def block(bid, label, instrs=(), tags=()):
    b = {"id": bid, "instrs": list(instrs), "labels": [label]}
    if tags:
        b["tags"] = list(tags)
    return b


def edge(a, b, cond=None):
    e = {"from": a, "to": b}
    if cond is not None:
        e["cond"] = cond
    return e


def frame_channel(fields, type_field="fc", **kw):
    ch = {"name": "frame", "fields": fields, "type_field": type_field}
    ch.update(kw)
    return ch


def ssckg(blocks, edges, rho, extra_rel=()):
    """One entity per block; relations follow control transfers."""
    ents, phi, rels = [], {}, []
    for b in blocks:
        eid = "e_" + b["id"]
        ents.append({"id": eid, "label": b["labels"][0], "rho": rho.get(b["id"], 0.2)})
        phi[eid] = [b["id"]]
    seen = set()

    def rel(a, b, t):
        if (a, b) not in seen:
            seen.add((a, b))
            rels.append({"src": "e_" + a, "dst": "e_" + b, "type": t})

    for b in blocks:
        for ins in b["instrs"]:
            if ins["op"] == "branch" and ins["target"]:
                rel(b["id"], ins["target"], "control-dep")
    for e in edges:
        rel(e["from"], e["to"], "data-flow")
    for a, b, t in extra_rel:
        rel(a, b, t)
    return {"entities": ents, "relations": rels, "phi": phi}


def alert(tool, v, src, snk, rho, rtype="data-flow"):
    return {"source_tool": tool, "entity": v, "relation_type": rtype, "src": src, "snk": snk, "rho": rho}


def cand(v, src, snk):
    return "c:%s:%s:%s" % (v, src, snk)


def msg(**fields):
    return fields


def benign(messages, state=None, entry=None):
    t = {"channels": {"frame": messages}, "state": state or {}}
    if entry:
        t["entry"] = entry
    return t


def manifest(cid, part, art, g, alerts, context, traces, truth, overrides=None):
    m = {
        "id": cid,
        "partition": part,
        "artifact": art,
        "ssckg": g,
        "candidates": alerts,
        "context": context,
        "benign_traces": traces,
        "ground_truth": truth,
    }
    if overrides:
        m["config_overrides"] = overrides
    return m


def artifact(aid, avail, vars_, obs, channels, blocks, edges, **kw):
    a = {
        "id": aid,
        "availability": avail,
        "vars": vars_,
        "observables": obs,
        "channels": channels,
        "blocks": blocks,
        "edges": edges,
    }
    a.update(kw)
    return a


def replay(enforce, harness):
    return {"enforcement_point": enforce, "harness": harness}


def truth(l2, cand_id, paths, harness, tier=0, refuting=None):
    t = {"L2": l2, "L3_replay": harness, "L4_remedy": tier, "candidate": cand_id, "vulnerable_paths": paths}
    if refuting:
        t["refuting_family"] = refuting
    return t


FC_LEN = [var("fc", 0, 7, "channel"), var("len", 0, 255, "channel")]


# --- binary-like ------------------------------------------------------------

def b1():
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["network-handler"]),
        block("dispatch", "decode-function-code", [branch([atom("fc", "eq", 3)], "wr")]),
        block("wr", "copy-buffer", [assign("n", "len"), sink("oob-write", [atom("n", "gt", 64)])]),
        block("reply", "send-response"),
        block("status", "read-register", [branch([atom("fc", "eq", 4)], "rd")]),
        block("rd", "read-register", [sink("oob-read", [atom("len", "gt", 200), atom("fc", "eq", 5)])]),
    ]
    edges = [edge("entry", "dispatch"), edge("dispatch", "status"), edge("wr", "reply"), edge("status", "reply"),
             edge("rd", "reply")]
    art = artifact("b1-golden-guard", "binary-rewritable", FC_LEN + [var("n", 0, 255, "local", init=0)],
                   ["fc", "len"], [frame_channel(["fc", "len"])], blocks, edges)
    g = ssckg(blocks, edges, {"wr": 0.9, "rd": 0.6})
    alerts = [alert("taint-a", "e_wr", "e_entry", "e_wr", 0.9),
              alert("taint-b", "wr", "entry", "wr", 0.8),
              alert("lint", "e_rd", "e_entry", "e_rd", 0.4),
              alert("lint", "e_missing", "e_entry", "e_wr", 0.3)]
    traces = [benign([msg(fc=3, len=10)]), benign([msg(fc=4, len=200)]), benign([msg(fc=1, len=0)]),
              benign([msg(fc=3, len=64)])]
    return manifest("B1", "binary", art, g, alerts, {"replay": replay(True, True)}, traces,
                    truth("reachable", cand("e_wr", "e_entry", "e_wr"), [["entry", "dispatch", "wr"]], True, 2))


def b2():
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["network-handler"]),
        block("check", "check-state", [branch([atom("mode", "eq", 1)], "fast")]),
        block("fast", "dispatch-handler"),
        block("wr", "copy-buffer", [assign("n", "len"), sink("oob-write", [atom("fc", "eq", 3), atom("n", "gt", 64)])]),
        block("slow", "validate-length"),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "check"), edge("check", "slow"), edge("fast", "wr"), edge("wr", "reply"),
             edge("slow", "reply")]
    art = artifact("b2-fastpath", "binary-rewritable",
                   FC_LEN + [var("mode", 0, 1, "io", "bool"), var("n", 0, 255, "local", init=0)],
                   ["fc", "len"], [frame_channel(["fc", "len"])], blocks, edges)
    g = ssckg(blocks, edges, {"wr": 0.85})
    alerts = [alert("taint-a", "e_wr", "e_entry", "e_wr", 0.85)]
    traces = [benign([msg(fc=3, len=100)], {"mode": 0}), benign([msg(fc=3, len=10)], {"mode": 1}),
              benign([msg(fc=2, len=90)], {"mode": 1}), benign([msg(fc=3, len=200)], {"mode": 0})]
    return manifest("B2", "binary", art, g, alerts, {"replay": replay(True, True)}, traces,
                    truth("reachable", cand("e_wr", "e_entry", "e_wr"), [["entry", "check", "fast", "wr"]], True, 2))


def b3():
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["network-handler"]),
        block("dispatch", "decode-function-code", [branch([atom("fc", "eq", 3)], "wa")]),
        block("wa", "alloc-buffer"),
        block("wb", "free-buffer"),
        block("wr", "copy-buffer", [sink("oob-write", [atom("len", "gt", 64)])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "dispatch"), edge("dispatch", "wb"), edge("wa", "wr", [atom("heap", "eq", 2)]),
             edge("wa", "reply"), edge("wb", "wr", [atom("heap", "ge", 1)]), edge("wb", "reply"), edge("wr", "reply")]
    art = artifact("b3-heap", "binary-rewritable",
                   FC_LEN + [var("heap", 0, 3, "runtime"), var("cfg", 0, 3, "env")],
                   ["fc", "len"], [frame_channel(["fc", "len"])], blocks, edges)
    g = ssckg(blocks, edges, {"wr": 0.8})
    ctx = {"runtime": {"atoms": [atom("heap", "eq", 0)], "evidence": 1.0},
           "env": {"atoms": [atom("cfg", "le", 1)], "evidence": 0.5},
           "replay": replay(True, True)}
    alerts = [alert("taint-a", "e_wr", "e_entry", "e_wr", 0.8)]
    traces = [benign([msg(fc=3, len=100)]), benign([msg(fc=1, len=10)])]
    return manifest("B3", "binary", art, g, alerts, ctx, traces,
                    truth("infeasible", cand("e_wr", "e_entry", "e_wr"), [], True, 0, "runtime"))


def b4():
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["network-handler"]),
        block("hdr", "parse-header", [branch([atom("fc", "neq", 3)], "reply")]),
        block("route", "dispatch-handler"),
        block("wr", "write-register", [sink("oob-write", [atom("len", "gt", 64)])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "hdr"), edge("hdr", "route"), edge("route", "wr"), edge("wr", "reply")]
    art = artifact("b4-tight-scan", "binary-rewritable", FC_LEN, ["fc", "len"], [frame_channel(["fc", "len"])],
                   blocks, edges, scan_slack=1)
    g = ssckg(blocks, edges, {"wr": 0.75})
    alerts = [alert("taint-a", "e_wr", "e_entry", "e_wr", 0.75)]
    traces = [benign([msg(fc=3, len=10)]), benign([msg(fc=1, len=200)]), benign([msg(fc=3, len=64)])]
    return manifest("B4", "binary", art, g, alerts, {"replay": replay(True, True)}, traces,
                    truth("reachable", cand("e_wr", "e_entry", "e_wr"), [["entry", "hdr", "route", "wr"]], True, 1))


def b5():
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["network-handler"]),
        block("cfg", "read-config"),
        block("wr", "copy-buffer", [sink("oob-write", [atom("fc", "eq", 3), atom("len", "gt", 128)])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "cfg"), edge("cfg", "wr", [atom("profile", "eq", 2)]), edge("cfg", "reply"),
             edge("wr", "reply")]
    art = artifact("b5-profile", "binary-rewritable", FC_LEN + [var("profile", 0, 3, "env")],
                   ["fc", "len"], [frame_channel(["fc", "len"])], blocks, edges)
    g = ssckg(blocks, edges, {"wr": 0.7})
    ctx = {"env": {"atoms": [atom("profile", "eq", 0)], "evidence": 0.3}, "replay": replay(True, True)}
    alerts = [alert("taint-a", "e_wr", "e_entry", "e_wr", 0.7)]
    traces = [benign([msg(fc=3, len=10)], {"profile": 2}), benign([msg(fc=3, len=200)], {"profile": 0})]
    return manifest("B5", "binary", art, g, alerts, ctx, traces,
                    truth("reachable", cand("e_wr", "e_entry", "e_wr"), [["entry", "cfg", "wr"]], True, 2))


# --- protocol-like ----------------------------------------------------------

SESSION_FSM = {"states": ["idle", "session", "armed"], "initial": 0,
               "transitions": [{"from": 0, "to": 1, "on": 1}, {"from": 1, "to": 1, "on": 3},
                               {"from": 1, "to": 2, "on": 5}, {"from": 2, "to": 2, "on": 3},
                               {"from": 2, "to": 0, "on": 6}]}


def p1():
    vars_ = FC_LEN + [var("addr", 0, 255, "channel"), var("q", 0, 2, "proto", "enum")]
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["protocol-handler"]),
        block("dispatch", "decode-function-code", [branch([atom("fc", "eq", 3), atom("q", "eq", 2)], "wr")]),
        block("wr", "write-register", [sink("oob-write", [atom("addr", "gt", 200)])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "dispatch"), edge("dispatch", "reply"), edge("wr", "reply")]
    ch = frame_channel(["fc", "len", "addr"], state_var="q", fsm=SESSION_FSM)
    art = artifact("p1-armed-write", "policy-only", vars_, ["fc", "len", "addr", "q"], [ch], blocks, edges)
    g = ssckg(blocks, edges, {"wr": 0.9})
    alerts = [alert("proto-fuzz", "e_wr", "e_entry", "e_wr", 0.9, "protocol-interaction")]
    traces = [benign([msg(fc=3, len=4, addr=10)], {"q": 2}), benign([msg(fc=1, len=0, addr=0)], {"q": 0}),
              benign([msg(fc=5, len=0, addr=250)], {"q": 1}), benign([msg(fc=3, len=8, addr=200)], {"q": 1})]
    return manifest("P1", "protocol", art, g, alerts, {"replay": replay(True, True)}, traces,
                    truth("reachable", cand("e_wr", "e_entry", "e_wr"), [["entry", "dispatch", "wr"]], True, 1))


def p2():
    vars_ = FC_LEN + [var("q", 0, 2, "proto", "enum"), var("role", 0, 1, "component", "bool"),
                      var("n", 0, 255, "local", init=0)]
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["protocol-handler"]),
        block("peer", "auth-check", [branch([atom("role", "eq", 1)], "relay")]),
        block("relay", "ipc-send"),
        block("rd", "read-register", [assign("n", "len", 16), sink("oob-read", [atom("fc", "eq", 3), atom("q", "ge", 1), atom("n", "gt", 128)])]),
        block("local", "log-event"),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "peer"), edge("peer", "local"), edge("relay", "rd"), edge("rd", "reply"),
             edge("local", "reply")]
    ch = frame_channel(["fc", "len"], state_var="q", fsm=SESSION_FSM)
    art = artifact("p2-relay", "binary-rewritable", vars_, ["fc", "len", "q"], [ch], blocks, edges)
    g = ssckg(blocks, edges, {"rd": 0.8})
    alerts = [alert("proto-fuzz", "e_rd", "e_entry", "e_rd", 0.8)]
    traces = [benign([msg(fc=3, len=150)], {"q": 1, "role": 0}), benign([msg(fc=3, len=20)], {"q": 1, "role": 1}),
              benign([msg(fc=1, len=0)], {"q": 0, "role": 1}), benign([msg(fc=3, len=200)], {"q": 2, "role": 0})]
    return manifest("P2", "protocol", art, g, alerts, {"replay": replay(True, True)}, traces,
                    truth("reachable", cand("e_rd", "e_entry", "e_rd"), [["entry", "peer", "relay", "rd"]], True, 2))


def p3():
    fsm = {"states": ["idle", "session", "maint"], "initial": 0,
           "transitions": [{"from": 0, "to": 1, "on": 1}, {"from": 1, "to": 1, "on": 3},
                           {"from": 2, "to": 0, "on": 6}]}
    vars_ = FC_LEN + [var("q", 0, 2, "proto", "enum"), var("cfg", 0, 3, "env")]
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["protocol-handler"]),
        block("dispatch", "decode-function-code", [branch([atom("fc", "eq", 6)], "fw")]),
        block("fw", "write-config"),
        block("coil", "write-coil"),
        block("wr", "write-register", [sink("unsafe-state-op", [atom("len", "gt", 16)])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "dispatch"), edge("dispatch", "coil"), edge("fw", "wr", [atom("q", "eq", 2)]),
             edge("fw", "reply"), edge("coil", "wr", [atom("q", "eq", 2), atom("fc", "eq", 4)]),
             edge("coil", "reply"), edge("wr", "reply")]
    ch = frame_channel(["fc", "len"], state_var="q", fsm=fsm)
    art = artifact("p3-maint", "binary-rewritable", vars_, ["fc", "len", "q"], [ch], blocks, edges)
    g = ssckg(blocks, edges, {"wr": 0.85})
    ctx = {"env": {"atoms": [atom("cfg", "le", 1)], "evidence": 0.4}, "replay": replay(True, True)}
    alerts = [alert("proto-fuzz", "e_wr", "e_entry", "e_wr", 0.85, "protocol-interaction"),
              alert("lint", "e_wr", "e_entry", "e_wr", 0.5, "protocol-interaction")]
    traces = [benign([msg(fc=3, len=10)], {"q": 1})]
    return manifest("P3", "protocol", art, g, alerts, ctx, traces,
                    truth("infeasible", cand("e_wr", "e_entry", "e_wr"), [], True, 0, "proto"))


def p4():
    vars_ = [var("fc", 0, 7, "channel"), var("x", 0, 65535, "channel"), var("y", 0, 65535, "channel")]
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["protocol-handler"]),
        block("cmp", "validate-length", [branch([atom("fc", "neq", 2)], "reply")]),
        block("cp", "copy-buffer", [sink("oob-write", [ref("x", "lt", "y"), ref("y", "lt", "x")])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "cmp"), edge("cmp", "cp"), edge("cp", "reply")]
    art = artifact("p4-crosscheck", "binary-rewritable", vars_, ["fc", "x", "y"],
                   [frame_channel(["fc", "x", "y"])], blocks, edges)
    g = ssckg(blocks, edges, {"cp": 0.6})
    alerts = [alert("taint-a", "e_cp", "e_entry", "e_cp", 0.6)]
    traces = [benign([msg(fc=2, x=1, y=2)])]
    return manifest("P4", "protocol", art, g, alerts, {"replay": replay(True, True)}, traces,
                    truth("unknown", cand("e_cp", "e_entry", "e_cp"), [], True))


def p5():
    vars_ = FC_LEN + [var("uptime", 0, 1000, "time")]
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["protocol-handler"]),
        block("boot", "scan-cycle"),
        block("wr", "write-register", [sink("integer-overflow", [atom("len", "ge", 250)])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "boot"), edge("boot", "wr", [atom("uptime", "lt", 10)]), edge("boot", "reply"),
             edge("wr", "reply")]
    art = artifact("p5-boot-window", "binary-rewritable", vars_, ["fc", "len"], [frame_channel(["fc", "len"])],
                   blocks, edges)
    g = ssckg(blocks, edges, {"wr": 0.65})
    ctx = {"time": {"atoms": [atom("uptime", "ge", 500)], "evidence": 0.2}, "replay": replay(False, False)}
    alerts = [alert("taint-b", "e_wr", "e_entry", "e_wr", 0.65)]
    traces = [benign([msg(fc=3, len=10)], {"uptime": 800})]
    return manifest("P5", "protocol", art, g, alerts, ctx, traces,
                    truth("reachable", cand("e_wr", "e_entry", "e_wr"), [["entry", "boot", "wr"]], False))


# --- ICS-like ---------------------------------------------------------------

def i1():
    vars_ = [var("fc", 0, 7, "channel"), var("idx", 0, 63, "channel"), var("acc", 0, 63, "local", init=0)]
    blocks = [
        block("entry", "scan-cycle", [read("frame")], ["scan-root"]),
        block("dispatch", "decode-function-code", [branch([atom("fc", "eq", 6)], "wr")]),
        block("wr", "write-register", [assign("acc", "idx"), sink("oob-write", [atom("idx", "gt", 15)])]),
        block("audit", "log-event"),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "dispatch"), edge("dispatch", "reply"), edge("wr", "audit"), edge("audit", "reply")]
    art = artifact("i1-register-table", "source-available", vars_, ["fc", "idx"],
                   [frame_channel(["fc", "idx"])], blocks, edges, domain_invariants=[atom("acc", "le", 63)])
    g = ssckg(blocks, edges, {"wr": 0.9})
    alerts = [alert("sast", "e_wr", "e_entry", "e_wr", 0.9)]
    traces = [benign([msg(fc=6, idx=3)]), benign([msg(fc=1, idx=40)])]
    return manifest("I1", "ics", art, g, alerts, {"replay": replay(False, True)}, traces,
                    truth("reachable", cand("e_wr", "e_entry", "e_wr"), [["entry", "dispatch", "wr"]], True, 3))


def i2():
    vars_ = FC_LEN + [var("level", 0, 255, "io"), var("site", 0, 3, "env")]
    blocks = [
        block("entry", "scan-cycle", [read("frame")], ["scan-root"]),
        block("sense", "read-sensor", [branch([atom("fc", "eq", 2)], "alt")]),
        block("alt", "read-sensor"),
        block("main", "lookup-register"),
        block("act", "write-actuator", [sink("oob-write", [atom("len", "gt", 32)])]),
        block("done", "log-event"),
    ]
    edges = [edge("entry", "sense"), edge("sense", "main"), edge("alt", "act", [atom("level", "gt", 200)]),
             edge("alt", "done"), edge("main", "act", [atom("level", "ge", 220)]), edge("main", "done"),
             edge("act", "done")]
    art = artifact("i2-level", "source-available", vars_, ["fc", "len"], [frame_channel(["fc", "len"])],
                   blocks, edges)
    g = ssckg(blocks, edges, {"act": 0.8})
    ctx = {"io": {"atoms": [rng("level", 0, 100)], "evidence": 1.0},
           "env": {"atoms": [atom("site", "eq", 1)], "evidence": 0.5},
           "replay": replay(False, True)}
    alerts = [alert("sast", "e_act", "e_entry", "e_act", 0.8)]
    traces = [benign([msg(fc=2, len=40)], {"level": 50})]
    return manifest("I2", "ics", art, g, alerts, ctx, traces,
                    truth("infeasible", cand("e_act", "e_entry", "e_act"), [], True, 0, "io"))


def i3():
    vars_ = [var("fc", 0, 7, "channel"), var("handle", 0, 15, "channel"), var("ptr", 0, 15, "local", init=1)]
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["firmware-service-entry"]),
        block("lookup", "lookup-register", [assign("ptr", "handle")]),
        block("use", "deref-pointer", [sink("null-deref", [atom("ptr", "eq", 0), atom("fc", "eq", 1)])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "lookup"), edge("lookup", "use"), edge("use", "reply")]
    art = artifact("i3-handle", "source-available", vars_, ["fc", "handle"],
                   [frame_channel(["fc", "handle"])], blocks, edges)
    g = ssckg(blocks, edges, {"use": 0.9})
    alerts = [alert("sast", "e_use", "e_entry", "e_use", 0.9), alert("taint-a", "use", "entry", "use", 0.7)]
    traces = [benign([msg(fc=1, handle=4)]), benign([msg(fc=2, handle=0)])]
    return manifest("I3", "ics", art, g, alerts, {"replay": replay(False, True)}, traces,
                    truth("reachable", cand("e_use", "e_entry", "e_use"), [["entry", "lookup", "use"]], True, 3))


def i4():
    vars_ = [var("fc", 0, 7, "channel"), var("val", 0, 255, "channel"), var("mode", 0, 3, "runtime")]
    blocks = [
        block("entry", "scan-cycle", [read("frame")], ["task-root"]),
        block("dispatch", "dispatch-handler", [branch([atom("fc", "eq", 5)], "coil")]),
        block("coil", "write-coil", [sink("unsafe-state-op", [atom("mode", "eq", 3)])]),
        block("done", "update-state"),
    ]
    edges = [edge("entry", "dispatch"), edge("dispatch", "done"), edge("coil", "done")]
    art = artifact("i4-run-mode", "source-available", vars_, ["fc", "val", "mode"],
                   [frame_channel(["fc", "val"])], blocks, edges)
    g = ssckg(blocks, edges, {"coil": 0.95})
    alerts = [alert("sast", "e_coil", "e_entry", "e_coil", 0.95), alert("sast", "e_done", "e_entry", "e_done", 0.3)]
    traces = [benign([msg(fc=5, val=1)], {"mode": 1}), benign([msg(fc=2, val=9)], {"mode": 3})]
    return manifest("I4", "ics", art, g, alerts, {"replay": replay(True, True)}, traces,
                    truth("reachable", cand("e_coil", "e_entry", "e_coil"), [["entry", "dispatch", "coil"]], True, 3))


def i5():
    vars_ = [var("fc", 0, 7, "channel"), var("len", 0, 255, "channel"), var("cnt", 0, 255, "channel")]
    blocks = [
        block("entry", "recv-frame", [read("frame")], ["startup-routine"]),
        block("size", "compute-length", [branch([atom("fc", "neq", 1)], "reply")]),
        block("cp", "copy-buffer", [sink("length-mismatch", [ref("len", "gt", "cnt")])]),
        block("reply", "send-response"),
    ]
    edges = [edge("entry", "size"), edge("size", "cp"), edge("cp", "reply")]
    art = artifact("i5-copy-length", "source-available", vars_, ["fc", "len", "cnt"],
                   [frame_channel(["fc", "len", "cnt"])], blocks, edges)
    g = ssckg(blocks, edges, {"cp": 0.8})
    alerts = [alert("sast", "e_cp", "e_entry", "e_cp", 0.8)]
    traces = [benign([msg(fc=1, len=4, cnt=4)]), benign([msg(fc=1, len=0, cnt=9)])]
    return manifest("I5", "ics", art, g, alerts, {"replay": replay(False, True)}, traces,
                    truth("reachable", cand("e_cp", "e_entry", "e_cp"), [["entry", "size", "cp"]], True, 3))


CASES = [b1, b2, b3, b4, b5, p1, p2, p3, p4, p5, i1, i2, i3, i4, i5]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "suite"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for make in CASES:
        m = make()
        (out / (m["id"] + ".json")).write_text(json.dumps(m, indent=2, sort_keys=True) + "\n")
    print("wrote %d manifests to %s" % (len(CASES), out))


if __name__ == "__main__":
    main()

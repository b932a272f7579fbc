#!/usr/bin/env python3
"""Convert the Monster table from GAP's ctbllib (ctomonst.tbl) to moonshine JSON.

usage: ctbllib_to_json.py ctomonst.tbl groups.txt out.json [--rows 1-7]
"""
import argparse
import cmath
import json
import math
import re
import sys


def mot_block(path, name="M"):
    txt = open(path).read()
    start = txt.index('MOT("%s",' % name)
    end = txt.index("\nARC(", start)
    body = txt[start + len('MOT("%s",' % name):end].strip()
    assert body.endswith(");")
    return body[:-2]


def split_top(s):
    # split a GAP argument list at depth-0 commas
    out, depth, cur, instr = [], 0, [], False
    for ch in s:
        if ch == '"':
            instr = not instr
        if not instr:
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            elif ch == "," and depth == 0:
                out.append("".join(cur).strip())
                cur = []
                continue
        cur.append(ch)
    out.append("".join(cur).strip())
    return out


def gap_list(s):
    # nested list of raw entry strings; holes -> None
    s = s.replace("\n", "").replace(" ", "")
    assert s[0] == "[" and s[-1] == "]"
    inner = s[1:-1]
    if inner == "":
        return []
    res = []
    for item in split_top(inner):
        if item == "":
            res.append(None)
        elif item.startswith("["):
            res.append(gap_list(item))
        else:
            res.append(item)
    return res


def cyclo_eval(expr, k):
    # value of a GAP cyclotomic expression with E(n) -> exp(2 pi i k/n)
    py = re.sub(r"E\((\d+)\)", lambda m: "_E(%s)" % m.group(1), expr).replace("^", "**")
    return eval(py, {"_E": lambda n: cmath.exp(2j * math.pi * k / n)})


def conductor(expr):
    ns = [int(x) for x in re.findall(r"E\((\d+)\)", expr)]
    return math.lcm(*ns) if ns else 1


def squarefree_part(n):
    sign = -1 if n < 0 else 1
    n = abs(n)
    b, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            b *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return b, sign * d * n


def quadratic(expr, galk=1):
    if re.fullmatch(r"-?\d+", expr):
        return (2 * int(expr), 0, 1)
    n = conductor(expr)
    vals = []
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            v = cyclo_eval(expr, k)
            if all(abs(v - w) > 1e-6 for w in vals):
                vals.append(v)
    assert len(vals) <= 2, expr
    v1 = cyclo_eval(expr, galk)
    if len(vals) == 1:
        a = round(v1.real)
        assert abs(v1 - a) < 1e-6
        return (2 * a, 0, 1)
    v2 = vals[0] if abs(vals[0] - v1) > 1e-6 else vals[1]
    a = round((v1 + v2).real)
    disc = (v1 - v2) ** 2
    D = round(disc.real)
    assert abs(disc - D) < 1e-6 and abs((v1 + v2) - a) < 1e-6
    b, d = squarefree_part(D)
    root = math.sqrt(d) if d > 0 else 1j * math.sqrt(-d)
    if abs((a + b * root) / 2 - v1) > 1e-6:
        b = -b
    assert abs((a + b * root) / 2 - v1) < 1e-6
    return (a, b, d)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("tbl")
    ap.add_argument("groups")
    ap.add_argument("out")
    ap.add_argument("--rows", default=None, help="e.g. 1-7; default all")
    args = ap.parse_args()

    parts = split_top(mot_block(args.tbl))
    cent = [int(x) for x in gap_list(parts[1])]
    pmaps = gap_list(parts[2])
    irr = gap_list(parts[3])
    nc = len(cent)
    order_m = cent[0]

    maps = {}
    for p, m in enumerate(pmaps, start=1):
        if m is not None:
            maps[p] = [int(x) - 1 for x in m]

    def power(i, k):
        for p in sorted(maps):
            while k % p == 0:
                i = maps[p][i]
                k //= p
        return i if k == 1 else None

    orders = []
    for i in range(nc):
        k = 1
        while power(i, k) != 0:
            k += 1
        orders.append(k)

    names, seen = [], {}
    for o in orders:
        c = seen.get(o, 0)
        seen[o] = c + 1
        names.append("%d%s" % (o, chr(ord("A") + c)))

    sym = {}
    for line in open(args.groups):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cls, s = line.split()
        num = re.match(r"\d+", cls).group()
        letters = cls[len(num):]
        for l in letters:
            sym[num + l] = s
    missing = [n for n in names if n not in sym]
    assert not missing, missing

    # resolve rows (GALOIS entries refer to earlier rows)
    raw = []
    for row in irr:
        if row[0] == "GALOIS":
            raw.append(("G", int(row[1][0]) - 1, int(row[1][1])))
        else:
            raw.append(("R", row))

    def row_values(r):
        kind = raw[r]
        if kind[0] == "R":
            return [quadratic(x) for x in kind[1]]
        _, src, k = kind
        base = raw[src]
        assert base[0] == "R"
        return [quadratic(x, k) for x in base[1]]

    if args.rows:
        lo, hi = (int(x) for x in args.rows.split("-"))
        sel = list(range(lo - 1, hi))
    else:
        sel = list(range(len(raw)))

    chars = []
    for r in sel:
        vals = row_values(r)
        chars.append({"index": r + 1,
                      "values": [{"a": str(a), "b": str(b), "d": d} for a, b, d in vals]})
    degrees = [row_values(r)[0][0] // 2 for r in range(len(raw))]

    classes = []
    for i in range(nc):
        pm = {str(p): names[maps[p][i]] for p in sorted(maps)}
        classes.append({"name": names[i], "centralizer_order": str(cent[i]),
                        "element_order": orders[i], "power_map": pm, "symbol": sym[names[i]]})
    doc = {"group_order": str(order_m), "classes": classes, "characters": chars,
           "degrees": [str(x) for x in degrees]}
    with open(args.out, "w") as f:
        json.dump(doc, f, indent=1)
    print("classes %d characters %d" % (nc, len(chars)), file=sys.stderr)


if __name__ == "__main__":
    main()

"""Brute-force reference rewriter, written independently of the library's rule table.

Every pass scans all positions of every pending word and rewrites the first
out-of-order pair it meets, until nothing changes.
"""

from qcross.scalar import lam, r, s

ORDER = {"f": 0, "F": 0, "a": 1, "b": 2, "c": 3, "d": 4}


def rules():
    rinv, sinv = r.inv(), s.inv()
    return {
        "ba": [(r, "ab")], "ca": [(r, "ac")], "db": [(r, "bd")], "dc": [(r, "cd")], "cb": [(1, "bc")],
        "da": [(1, "ad"), (lam, "bc")],
        "af": [(1, "fa")], "df": [(1, "fd")], "bf": [(sinv, "fb")], "cf": [(s, "fc")],
        "aF": [(1, "Fa")], "dF": [(1, "Fd")], "bF": [(s, "Fb")], "cF": [(sinv, "Fc")],
        "fF": [(1, "")], "Ff": [(1, "")],
    }


def normal_form(word: str):
    """Dict normal word -> Scalar."""
    table = rules()
    todo = {word: 1}
    done = {}
    while todo:
        nxt = {}
        for w, c in todo.items():
            for pos in range(len(w) - 1):
                pair = w[pos:pos + 2]
                if pair in table:
                    for k, rep in table[pair]:
                        nw = w[:pos] + rep + w[pos + 2:]
                        nxt[nw] = nxt.get(nw, 0) + c * k
                    break
            else:
                done[w] = done.get(w, 0) + c
        todo = {w: c for w, c in nxt.items() if c != 0}
    return {w: c for w, c in done.items() if c != 0}


def to_monomial(word: str):
    k = word.count("f") - word.count("F")
    return (k, word.count("a"), word.count("b"), word.count("c"), word.count("d"))


def as_poly(word: str):
    out = {}
    for w, c in normal_form(word).items():
        assert all(ORDER[x] <= ORDER[y] for x, y in zip(w, w[1:]))
        m = to_monomial(w)
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c != 0}

"""Reference implementations that share no code with the package.

They are deliberately naive and only cover small fragments (ordinals below
w^w, integer-indexed Z-lines) so frozen test values can be re-derived here.
"""

from itertools import product

# -- ordinals below w^w as {exponent: coefficient} -----------------------------


def poly(text):
    """Parse 'w^2*3+w+4' style literals with natural exponents."""
    out = {}
    if text.strip() == "0":
        return out
    for term in text.split("+"):
        term = term.strip()
        coef = 1
        if "*" in term:
            term, c = term.split("*")
            coef = int(c)
        if term.startswith("w"):
            exp = int(term[2:]) if term.startswith("w^") else 1
        else:
            exp, coef = 0, int(term) * coef
        out[exp] = out.get(exp, 0) + coef
    return out


def show(p):
    if not p:
        return "0"
    parts = []
    for e in sorted(p, reverse=True):
        c = p[e]
        if e == 0:
            parts.append(str(c))
            continue
        base = "w" if e == 1 else f"w^{e}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


def p_cmp(a, b):
    for e in sorted(set(a) | set(b), reverse=True):
        x, y = a.get(e, 0), b.get(e, 0)
        if x != y:
            return -1 if x < y else 1
    return 0


def p_add(a, b):
    if not b:
        return dict(a)
    d = max(b)
    out = {e: c for e, c in a.items() if e > d}
    out[d] = a.get(d, 0) + b[d]
    out.update({e: c for e, c in b.items() if e < d})
    return out


def p_mul(a, b):
    if not a or not b:
        return {}
    lead = max(a)
    out = {}
    for e in sorted(b, reverse=True):
        c = b[e]
        if e:
            piece = {lead + e: c}
        else:
            piece = {k: v for k, v in a.items() if k < lead}
            piece[lead] = a[lead] * c
        out = p_add(out, piece)
    return out


def p_natadd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return out


# -- Z[n] with integer positions, elements as dicts -----------------------------


def z_greatest_difference(a, b):
    keys = [k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0)]
    return max(keys) if keys else None


def z_cmp(a, b):
    p = z_greatest_difference(a, b)
    if p is None:
        return 0
    return -1 if a.get(p, 0) < b.get(p, 0) else 1


def z_erel_scan(a, b, positions):
    """All (l, z) with b(l) = a(l) + z and agreement strictly above l."""
    hits = []
    for l in positions:
        if all(a.get(k, 0) == b.get(k, 0) for k in positions if k > l) and a.get(l, 0) != b.get(l, 0):
            hits.append((l, b.get(l, 0) - a.get(l, 0)))
    return hits


# -- least beta with 1 + beta = target, for targets below w^w ---------------------


def least_beta_one_plus(target):
    """Search candidates beta in increasing order (target given as a poly)."""
    lead = max(target) if target else 0
    candidates = [{}]
    for e in range(lead + 1):
        for c in range(1, 4):
            for tail in range(0, 6):
                p = {e: c} if e else {0: c}
                if e and tail:
                    p[0] = tail
                candidates.append(p)
    for n in range(1, 8):
        candidates.append({0: n})
    candidates.sort(key=lambda p: [p.get(e, 0) for e in range(lead, -1, -1)])
    for beta in candidates:
        if p_cmp(p_add({0: 1}, beta), target) == 0:
            return beta
    raise AssertionError("no candidate")


# -- games by backward induction -------------------------------------------------


def game_rank(k, D, wins, pos=()):
    """Rank by plain recursion; None stands for Player II winning."""
    wins = {tuple(w) for w in wins}

    def won(p):
        # every run through p has a winning prefix by the horizon
        if any(p[:n] in wins for n in range(0, len(p) + 1, 2)):
            return True
        return len(p) < D and all(won(p + (m,)) for m in range(k))

    def rank(p):
        if won(p):
            return 0
        if len(p) >= D:
            return None
        best = None
        for a in range(k):
            worst = 0
            for b in range(k):
                r = rank(p + (a, b))
                if r is None:
                    worst = None
                    break
                worst = max(worst, r)
            if worst is not None and (best is None or worst + 1 < best):
                best = worst + 1
        return best

    return rank(tuple(pos))


def all_games(k, D):
    """Every win set over even-length positions of length <= D (tiny k, D)."""
    positions = [()]
    for n in range(2, D + 1, 2):
        positions += list(product(range(k), repeat=n))
    for bits in range(1 << len(positions)):
        yield [p for i, p in enumerate(positions) if bits >> i & 1]

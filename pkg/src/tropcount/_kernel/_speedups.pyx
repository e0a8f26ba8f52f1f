# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search for point-constraint assignments.

Mirrors _kernel.pure exactly: same inputs, same candidate set, same
non-general semantics.  Arithmetic uses 128-bit intermediates over
entries kept below 2^62; anything larger aborts with OVERFLOW and the
caller reruns the pure implementation, so results are always exact.
"""

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef enum:
    MAXU = 20
    MAXL = 12
    MAXR = 4
    MAXE = 40

OK = 0
NON_GENERAL = 1
OVERFLOW = 2

cdef i128 LIMIT = (<i128>1) << 62


cdef class _Search:
    cdef int n, nb, U, r, l, E
    cdef i128 blocks[MAXE][MAXR][MAXU]
    cdef i128 rhs[MAXE][MAXL][MAXR]
    cdef int lbounded[MAXE]
    cdef int tj[MAXE]
    cdef i128 tuj[MAXE]
    cdef i128 hrow[MAXE][MAXU]
    cdef i128 pj[MAXE][MAXL]

    cdef i128 evec[MAXU][MAXU]
    cdef i128 emult[MAXU][MAXU]
    cdef i128 pivots[MAXU]
    cdef int pivcol[MAXU]
    cdef int nech
    cdef int chosen[MAXL]
    cdef int status

    cdef i128 det
    cdef i128 adjm[MAXU][2 * MAXU]
    cdef i128 vval[MAXL][MAXL][MAXU]
    cdef i128 vmin[MAXL][MAXU]
    cdef i128 vmax[MAXL][MAXU]
    cdef i128 sfxmin[MAXL + 1][MAXU]
    cdef i128 sfxmax[MAXL + 1][MAXU]
    cdef int used[MAXL]
    cdef int sigma[MAXL]
    cdef i128 acc[MAXL + 1][MAXU]

    cdef i128 gvals[MAXL][MAXL]
    cdef int gslots
    cdef i128 gmin[MAXL]
    cdef i128 gmax[MAXL]
    cdef i128 gsfxmin[MAXL + 1]
    cdef i128 gsfxmax[MAXL + 1]
    cdef int gused[MAXL]

    cdef list candidates

    cdef int ingest(self, n, nb, blocks, rhs, lbounded, tdata, pj) except -1:
        cdef int e, i, j, c
        self.n = n
        self.nb = nb
        self.U = n + nb
        self.E = len(blocks)
        self.r = len(blocks[0])
        self.l = len(rhs[0])
        if (self.U > MAXU or self.l > MAXL or self.r > MAXR
                or self.E > MAXE or self.l * self.r != self.U):
            return 0
        for e in range(self.E):
            for i in range(self.r):
                for j in range(self.U):
                    v = blocks[e][i][j]
                    if v > 4611686018427387904 or v < -4611686018427387904:
                        return 0
                    self.blocks[e][i][j] = <i128><long long>v
            for c in range(self.l):
                for i in range(self.r):
                    v = rhs[e][c][i]
                    if v > 4611686018427387904 or v < -4611686018427387904:
                        return 0
                    self.rhs[e][c][i] = <i128><long long>v
                v = pj[e][c]
                if v > 4611686018427387904 or v < -4611686018427387904:
                    return 0
                self.pj[e][c] = <i128><long long>v
            self.lbounded[e] = lbounded[e]
            self.tj[e] = tdata[e][0]
            self.tuj[e] = <i128><long long>tdata[e][1]
            for j in range(self.U):
                v = tdata[e][2][j]
                if v > 4611686018427387904 or v < -4611686018427387904:
                    return 0
                self.hrow[e][j] = <i128><long long>v
        self.nech = 0
        self.status = OK
        self.candidates = []
        return 1

    cdef int push_row(self, int e, int ridx, int slot):
        """0 appended, 1 dependent, -1 overflow."""
        cdef i128 w[MAXU]
        cdef i128 m[MAXU]
        cdef i128 prev, p, f, num
        cdef int i, j, c
        for j in range(self.U):
            w[j] = self.blocks[e][ridx][j]
            m[j] = 0
        m[slot * self.r + ridx] = 1
        prev = 1
        for i in range(self.nech):
            p = self.pivots[i]
            c = self.pivcol[i]
            f = w[c]
            for j in range(self.U):
                num = p * w[j] - f * self.evec[i][j]
                if num % prev != 0:
                    return -1
                w[j] = num // prev
                if w[j] > LIMIT or w[j] < -LIMIT:
                    return -1
            for j in range(self.U):
                num = p * m[j] - f * self.emult[i][j]
                if num % prev != 0:
                    return -1
                m[j] = num // prev
                if m[j] > LIMIT or m[j] < -LIMIT:
                    return -1
            prev = p
        for c in range(self.U):
            if w[c] != 0:
                for j in range(self.U):
                    self.evec[self.nech][j] = w[j]
                    self.emult[self.nech][j] = m[j]
                self.pivots[self.nech] = w[c]
                self.pivcol[self.nech] = c
                self.nech += 1
                return 0
        # dependent: build per-slot right-hand values of the relation
        cdef int k, ii, ridx2, have
        cdef i128 mu, gacc
        self.gslots = 0
        for k in range(slot + 1):
            have = 0
            for c in range(self.l):
                gacc = 0
                for ridx2 in range(self.r):
                    ii = k * self.r + ridx2
                    mu = m[ii]
                    if mu != 0:
                        gacc += mu * self.rhs[self.chosen[k]][c][ridx2]
                        have = 1
                self.gvals[self.gslots][c] = gacc
            if have:
                self.gslots += 1
        if self._exists_zero():
            self.status = NON_GENERAL
        return 1

    cdef int _exists_zero(self):
        cdef int k, c, i
        cdef i128 lo, hi
        for k in range(self.gslots):
            lo = self.gvals[k][0]
            hi = self.gvals[k][0]
            for c in range(1, self.l):
                if self.gvals[k][c] < lo:
                    lo = self.gvals[k][c]
                if self.gvals[k][c] > hi:
                    hi = self.gvals[k][c]
            self.gmin[k] = lo
            self.gmax[k] = hi
        self.gsfxmin[self.gslots] = 0
        self.gsfxmax[self.gslots] = 0
        for k in range(self.gslots - 1, -1, -1):
            self.gsfxmin[k] = self.gsfxmin[k + 1] + self.gmin[k]
            self.gsfxmax[k] = self.gsfxmax[k + 1] + self.gmax[k]
        for c in range(self.l):
            self.gused[c] = 0
        return self._zero_rec(0, 0)

    cdef int _zero_rec(self, int i, i128 acc):
        if i == self.gslots:
            return acc == 0
        if acc + self.gsfxmin[i] > 0 or acc + self.gsfxmax[i] < 0:
            return 0
        cdef int c
        for c in range(self.l):
            if not self.gused[c]:
                self.gused[c] = 1
                if self._zero_rec(i + 1, acc + self.gvals[i][c]):
                    self.gused[c] = 0
                    return 1
                self.gused[c] = 0
        return 0

    cdef int adjugate(self):
        """det and adjugate of the stacked chosen blocks; 0 on overflow
        or non-exact division, 1 on success."""
        cdef int u = self.U
        cdef int t, i, j, k, e, ridx, row
        cdef i128 sign, prev, piv, f, num
        row = 0
        for k in range(self.l):
            e = self.chosen[k]
            for ridx in range(self.r):
                for j in range(u):
                    self.adjm[row][j] = self.blocks[e][ridx][j]
                for j in range(u):
                    self.adjm[row][u + j] = 1 if row == j else 0
                row += 1
        sign = 1
        prev = 1
        for t in range(u):
            if self.adjm[t][t] == 0:
                i = -1
                for j in range(t + 1, u):
                    if self.adjm[j][t] != 0:
                        i = j
                        break
                if i < 0:
                    return 0
                for j in range(2 * u):
                    num = self.adjm[t][j]
                    self.adjm[t][j] = self.adjm[i][j]
                    self.adjm[i][j] = num
                sign = -sign
            piv = self.adjm[t][t]
            for i in range(u):
                if i != t:
                    f = self.adjm[i][t]
                    for j in range(2 * u):
                        num = piv * self.adjm[i][j] - f * self.adjm[t][j]
                        if num % prev != 0:
                            return 0
                        self.adjm[i][j] = num // prev
                        if self.adjm[i][j] > LIMIT or self.adjm[i][j] < -LIMIT:
                            return 0
            prev = piv
        self.det = sign * self.adjm[u - 1][u - 1]
        if sign < 0:
            for i in range(u):
                for j in range(u):
                    self.adjm[i][u + j] = -self.adjm[i][u + j]
        return 1

    cdef int full_subset(self):
        """Solve at full rank; 0 on overflow, 1 otherwise."""
        cdef int u = self.U
        cdef int k, c, i, ridx, e, col
        cdef i128 q, v
        if not self.adjugate():
            return 0
        for k in range(self.l):
            e = self.chosen[k]
            for c in range(self.l):
                for i in range(u):
                    self.vval[k][c][i] = 0
                for ridx in range(self.r):
                    q = self.rhs[e][c][ridx]
                    if q != 0:
                        col = k * self.r + ridx
                        for i in range(u):
                            self.vval[k][c][i] += self.adjm[i][u + col] * q
                for i in range(u):
                    v = self.vval[k][c][i]
                    if v > LIMIT or v < -LIMIT:
                        return 0
            for i in range(u):
                self.vmin[k][i] = self.vval[k][0][i]
                self.vmax[k][i] = self.vval[k][0][i]
                for c in range(1, self.l):
                    v = self.vval[k][c][i]
                    if v < self.vmin[k][i]:
                        self.vmin[k][i] = v
                    if v > self.vmax[k][i]:
                        self.vmax[k][i] = v
        for i in range(u):
            self.sfxmin[self.l][i] = 0
            self.sfxmax[self.l][i] = 0
        for k in range(self.l - 1, -1, -1):
            for i in range(u):
                self.sfxmin[k][i] = self.sfxmin[k + 1][i] + self.vmin[k][i]
                self.sfxmax[k][i] = self.sfxmax[k + 1][i] + self.vmax[k][i]
        for c in range(self.l):
            self.used[c] = 0
        for i in range(u):
            self.acc[0][i] = 0
        self.assign_rec(0)
        return 1

    cdef int leaf_checks(self):
        cdef int u = self.U
        cdef int b, k, e, i, lb
        cdef i128 q, tt, du, qq
        cdef bint pos = self.det > 0
        for b in range(self.nb):
            q = self.acc[self.l][self.n + b]
            if q == 0:
                self.status = NON_GENERAL
                return 0
            if (q > 0) != pos:
                return 0
        for k in range(self.l):
            e = self.chosen[k]
            tt = self.det * self.pj[e][self.sigma[k]]
            for i in range(u):
                if self.hrow[e][i] != 0:
                    tt -= self.hrow[e][i] * self.acc[self.l][i]
            du = self.tuj[e] if pos else -self.tuj[e]
            if tt == 0:
                self.status = NON_GENERAL
                return 0
            if (tt > 0) != (du > 0):
                return 0
            lb = self.lbounded[e]
            if lb >= 0:
                qq = tt - self.acc[self.l][self.n + lb] * self.tuj[e]
                if qq == 0:
                    self.status = NON_GENERAL
                    return 0
                if (qq > 0) == (du > 0):
                    return 0
        return 1

    cdef void assign_rec(self, int k):
        if self.status == NON_GENERAL:
            return
        cdef int u = self.U
        cdef int i, c
        cdef i128 lo, hi
        cdef bint pos = self.det > 0
        for i in range(self.n, u):
            lo = self.acc[k][i] + self.sfxmin[k][i]
            hi = self.acc[k][i] + self.sfxmax[k][i]
            if pos and hi < 0:
                return
            if (not pos) and lo > 0:
                return
        if k == self.l:
            if self.leaf_checks():
                edges = tuple(self.chosen[i] for i in range(self.l))
                sig = tuple(self.sigma[i] for i in range(self.l))
                self.candidates.append((edges, sig))
            return
        for c in range(self.l):
            if not self.used[c]:
                self.used[c] = 1
                self.sigma[k] = c
                for i in range(u):
                    self.acc[k + 1][i] = self.acc[k][i] + self.vval[k][c][i]
                self.assign_rec(k + 1)
                self.used[c] = 0
                if self.status == NON_GENERAL:
                    return

    cdef int dfs(self, int start, int depth):
        """1 ok, 0 overflow-abort."""
        cdef int e, saved, ridx, res
        cdef bint dead
        if self.status == NON_GENERAL:
            return 1
        if depth == self.l:
            return self.full_subset()
        for e in range(start, self.E):
            self.chosen[depth] = e
            saved = self.nech
            dead = False
            for ridx in range(self.r):
                res = self.push_row(e, ridx, depth)
                if res < 0:
                    return 0
                if res == 1:
                    dead = True
                    break
            if not dead:
                if not self.dfs(e, depth + 1):
                    return 0
            self.nech = saved
            if self.status == NON_GENERAL:
                return 1
        return 1


def search_points(n, nb, blocks, rhs, lbounded, tdata, pj):
    cdef _Search s = _Search()
    if not s.ingest(n, nb, blocks, rhs, lbounded, tdata, pj):
        return OVERFLOW, []
    if not s.dfs(0, 0):
        return OVERFLOW, []
    if s.status == NON_GENERAL:
        return NON_GENERAL, []
    return OK, s.candidates

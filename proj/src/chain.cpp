#include "fc/chain.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fc {

int ChainComplex::rank_at(int deg) const {
    int i = deg - lo;
    return (i < 0 || i >= (int)ranks.size()) ? 0 : ranks[i];
}

IntMat ChainComplex::diff(int deg) const {
    int i = deg - lo;
    if (i <= 0 || i >= (int)ranks.size()) return IntMat(rank_at(deg - 1), rank_at(deg));
    return d[i];
}

int ChainComplex::total_rank() const {
    int t = 0;
    for (int r : ranks) t += r;
    return t;
}

ValidationReport ChainComplex::validate() const {
    ValidationReport rep;
    if (d.size() != ranks.size()) {
        rep.violations.push_back("differential table size mismatch");
        return rep;
    }
    for (size_t i = 0; i < ranks.size(); ++i) {
        int want_rows = i == 0 ? 0 : ranks[i - 1];
        if (d[i].cols() != ranks[i] || d[i].rows() != want_rows)
            rep.violations.push_back("differential shape wrong in degree " + std::to_string(lo + (int)i));
    }
    if (!rep.ok()) return rep;
    for (size_t i = 1; i + 1 < ranks.size(); ++i)
        if (!(d[i] * d[i + 1]).is_zero())
            rep.violations.push_back("d^2 != 0 entering degree " + std::to_string(lo + (int)i - 1));
    return rep;
}

std::string ChainComplex::fingerprint() const {
    std::ostringstream os;
    os << lo << '|';
    for (int r : ranks) os << r << ',';
    os << '|';
    for (auto& m : d) os << m.repr() << '#';
    return os.str();
}

void ChainComplex::trim() {
    while (!ranks.empty() && ranks.back() == 0) {
        ranks.pop_back();
        d.pop_back();
    }
    while (!ranks.empty() && ranks.front() == 0) {
        ranks.erase(ranks.begin());
        d.erase(d.begin());
        ++lo;
        if (!d.empty()) d[0] = IntMat(0, ranks[0]);
    }
    if (ranks.empty()) lo = 0;
}

ChainComplex zero_complex() { return {}; }

ChainComplex free_complex(int deg, int rank) {
    ChainComplex c;
    c.lo = deg;
    c.ranks = {rank};
    c.d = {IntMat(0, rank)};
    return c;
}

ChainComplex two_term(int deg, const Int& mult) {
    ChainComplex c;
    c.lo = deg - 1;
    c.ranks = {1, 1};
    IntMat m(1, 1);
    m.set(0, 0, mult);
    c.d = {IntMat(0, 1), m};
    return c;
}

IntMat ChainMap::at(int deg) const {
    auto it = comp.find(deg);
    if (it != comp.end()) return it->second;
    return IntMat(dst.rank_at(deg), src.rank_at(deg));
}

ValidationReport ChainMap::validate() const {
    ValidationReport rep;
    for (auto& [deg, m] : comp)
        if (m.rows() != dst.rank_at(deg) || m.cols() != src.rank_at(deg))
            rep.violations.push_back("component shape wrong in degree " + std::to_string(deg));
    if (!rep.ok()) return rep;
    int a = std::min(src.lo, dst.lo), b = std::max(src.hi(), dst.hi());
    for (int deg = a; deg <= b + 1; ++deg)
        if (!(dst.diff(deg) * at(deg) == at(deg - 1) * src.diff(deg)))
            rep.violations.push_back("does not commute with d in degree " + std::to_string(deg));
    return rep;
}

ChainMap identity_map(const ChainComplex& c) {
    ChainMap f{c, c, {}};
    for (int deg = c.lo; deg <= c.hi(); ++deg)
        if (c.rank_at(deg) > 0) f.comp[deg] = IntMat::identity(c.rank_at(deg));
    return f;
}

ChainMap zero_map(const ChainComplex& src, const ChainComplex& dst) { return {src, dst, {}}; }

ChainMap compose_maps(const ChainMap& g, const ChainMap& f) {
    ChainMap out{f.src, g.dst, {}};
    for (int deg = f.src.lo; deg <= f.src.hi(); ++deg) {
        if (f.src.rank_at(deg) == 0 || g.dst.rank_at(deg) == 0) continue;
        IntMat m = g.at(deg) * f.at(deg);
        if (!m.is_zero()) out.comp[deg] = std::move(m);
    }
    return out;
}

ChainMap add_maps(const ChainMap& f, const ChainMap& g) {
    ChainMap out{f.src, f.dst, {}};
    std::set<int> degs;
    for (auto& kv : f.comp) degs.insert(kv.first);
    for (auto& kv : g.comp) degs.insert(kv.first);
    for (int d : degs) {
        IntMat m = f.at(d) + g.at(d);
        if (!m.is_zero()) out.comp[d] = std::move(m);
    }
    return out;
}

ChainMap negate_map(const ChainMap& f) {
    ChainMap out = f;
    for (auto& kv : out.comp) kv.second = -kv.second;
    return out;
}

bool HomologySummary::trivial() const {
    for (auto& kv : groups)
        if (kv.second.first != 0 || !kv.second.second.empty()) return false;
    return true;
}

std::string HomologySummary::str() const {
    std::ostringstream os;
    bool any = false;
    for (auto& [deg, g] : groups) {
        if (g.first == 0 && g.second.empty()) continue;
        if (any) os << ", ";
        any = true;
        os << "H_" << deg << "=";
        bool first = true;
        if (g.first > 0) {
            os << "Z";
            if (g.first > 1) os << "^" << g.first;
            first = false;
        }
        for (auto& t : g.second) {
            if (!first) os << "+";
            os << "Z/" << t;
            first = false;
        }
    }
    return any ? os.str() : "0";
}

// ---- reduction by unit cancellation ----

namespace {

struct Working {
    int lo = 0, n = 0;
    bool with_maps = false;
    std::vector<std::vector<char>> alive;               // per degree index i, original basis
    std::vector<std::vector<std::map<int, Int>>> rows;  // rows[i][r][c] entries of d_{lo+i}
    std::vector<std::vector<std::set<int>>> cols;       // cols[i][c]: rows with a nonzero in column c
    std::vector<std::vector<std::map<int, Int>>> proj;  // per degree, per current element: row over originals
    std::vector<std::vector<std::map<int, Int>>> inclT; // per degree, per current element: column as row

    void erase_entry(int i, int r, int c) {
        rows[i][r].erase(c);
        cols[i][c].erase(r);
    }
    void add_entry(int i, int r, int c, const Int& v) {
        if (v == 0) return;
        auto it = rows[i][r].find(c);
        if (it == rows[i][r].end()) {
            rows[i][r][c] = v;
            cols[i][c].insert(r);
        } else {
            it->second += v;
            if (it->second == 0) erase_entry(i, r, c);
        }
    }

    static void axpy_row(std::map<int, Int>& target, const std::map<int, Int>& source, const Int& coef) {
        if (coef == 0) return;
        for (auto& [k, v] : source) {
            auto it = target.find(k);
            if (it == target.end()) {
                target[k] = coef * v;
            } else {
                it->second += coef * v;
                if (it->second == 0) target.erase(it);
            }
        }
    }

    // cancel the unit entry alpha = d_{lo+i}[r][c]; r lives in degree i-1, c in degree i
    void cancel(int i, int r, int c) {
        Int alpha = rows[i][r].at(c);  // +1 or -1
        std::map<int, Int> beta = rows[i][r];
        beta.erase(c);
        std::vector<std::pair<int, Int>> gamma;
        for (int rr : cols[i][c])
            if (rr != r) gamma.push_back({rr, rows[i][rr].at(c)});
        for (auto cc : std::vector<int>([&] {
                 std::vector<int> v;
                 for (auto& kv : rows[i][r]) v.push_back(kv.first);
                 return v;
             }()))
            erase_entry(i, r, cc);
        for (auto rr : std::vector<int>(cols[i][c].begin(), cols[i][c].end())) erase_entry(i, rr, c);
        for (auto& [rr, g] : gamma)
            for (auto& [cc, b] : beta) add_entry(i, rr, cc, -g * alpha * b);
        if (i + 1 < n)
            for (auto cc : std::vector<int>([&] {
                     std::vector<int> v;
                     for (auto& kv : rows[i + 1][c]) v.push_back(kv.first);
                     return v;
                 }()))
                erase_entry(i + 1, c, cc);
        if (i >= 1 && i - 1 >= 1)
            for (auto rr : std::vector<int>(cols[i - 1][r].begin(), cols[i - 1][r].end())) erase_entry(i - 1, rr, r);
        if (with_maps) {
            for (auto& [rr, g] : gamma) axpy_row(proj[i - 1][rr], proj[i - 1][r], -g * alpha);
            proj[i - 1][r].clear();
            proj[i][c].clear();
            for (auto& [cc, b] : beta) axpy_row(inclT[i][cc], inclT[i][c], -alpha * b);
            inclT[i][c].clear();
            inclT[i - 1][r].clear();
        }
        alive[i][c] = 0;
        alive[i - 1][r] = 0;
    }
};

}  // namespace

Reduction reduce(const ChainComplex& c, bool with_maps) {
    Working w;
    w.lo = c.lo;
    w.n = (int)c.ranks.size();
    w.with_maps = with_maps;
    w.alive.resize(w.n);
    w.rows.resize(w.n);
    w.cols.resize(w.n);
    if (with_maps) {
        w.proj.resize(w.n);
        w.inclT.resize(w.n);
    }
    for (int i = 0; i < w.n; ++i) {
        w.alive[i].assign(c.ranks[i], 1);
        w.rows[i].resize(i == 0 ? 0 : c.ranks[i - 1]);
        w.cols[i].resize(c.ranks[i]);
        if (i > 0)
            for (int r = 0; r < c.d[i].rows(); ++r)
                for (auto& [cc, v] : c.d[i].row(r)) {
                    w.rows[i][r][cc] = v;
                    w.cols[i][cc].insert(r);
                }
        if (with_maps) {
            w.proj[i].resize(c.ranks[i]);
            w.inclT[i].resize(c.ranks[i]);
            for (int b = 0; b < c.ranks[i]; ++b) {
                w.proj[i][b][b] = 1;
                w.inclT[i][b][b] = 1;
            }
        }
    }

    // passes: collect unit pivots sorted by fill-in cost, apply while valid
    while (true) {
        struct Cand {
            long long cost;
            int i, r, cc;
        };
        std::vector<Cand> cands;
        for (int i = 1; i < w.n; ++i)
            for (int r = 0; r < (int)w.rows[i].size(); ++r)
                for (auto& [cc, v] : w.rows[i][r])
                    if (v == 1 || v == -1)
                        cands.push_back({(long long)(w.rows[i][r].size() - 1) * ((long long)w.cols[i][cc].size() - 1),
                                         i, r, cc});
        if (cands.empty()) break;
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.cost < b.cost; });
        bool any = false;
        for (auto& cd : cands) {
            if (!w.alive[cd.i][cd.cc] || !w.alive[cd.i - 1][cd.r]) continue;
            auto it = w.rows[cd.i][cd.r].find(cd.cc);
            if (it == w.rows[cd.i][cd.r].end() || (it->second != 1 && it->second != -1)) continue;
            w.cancel(cd.i, cd.r, cd.cc);
            any = true;
        }
        if (!any) break;
    }

    // extract the core
    Reduction res;
    res.with_maps = with_maps;
    std::vector<std::vector<int>> keep(w.n);
    for (int i = 0; i < w.n; ++i)
        for (int b = 0; b < (int)w.alive[i].size(); ++b)
            if (w.alive[i][b]) keep[i].push_back(b);
    res.core.lo = c.lo;
    res.core.ranks.resize(w.n);
    res.core.d.resize(w.n);
    for (int i = 0; i < w.n; ++i) {
        res.core.ranks[i] = (int)keep[i].size();
        int rows_n = i == 0 ? 0 : (int)keep[i - 1].size();
        IntMat m(rows_n, (int)keep[i].size());
        if (i > 0) {
            std::map<int, int> rindex;
            for (int a = 0; a < (int)keep[i - 1].size(); ++a) rindex[keep[i - 1][a]] = a;
            for (int b = 0; b < (int)keep[i].size(); ++b)
                for (auto& [r, v] : [&]() -> const std::map<int, Int>& {
                         static const std::map<int, Int> empty;
                         return empty;
                     }())
                    (void)r, (void)v;
            for (int b = 0; b < (int)keep[i].size(); ++b) {
                int cc = keep[i][b];
                for (int r : w.cols[i][cc]) m.set(rindex.at(r), b, w.rows[i][r].at(cc));
            }
        }
        res.core.d[i] = std::move(m);
    }
    res.core.trim();
    if (with_maps) {
        res.proj.src = c;
        res.proj.dst = res.core;
        res.incl.src = res.core;
        res.incl.dst = c;
        for (int i = 0; i < w.n; ++i) {
            int deg = c.lo + i;
            if (keep[i].empty() || c.ranks[i] == 0) continue;
            IntMat p((int)keep[i].size(), c.ranks[i]);
            IntMat inc(c.ranks[i], (int)keep[i].size());
            for (int a = 0; a < (int)keep[i].size(); ++a) {
                for (auto& [ob, v] : w.proj[i][keep[i][a]]) p.set(a, ob, v);
                for (auto& [ob, v] : w.inclT[i][keep[i][a]]) inc.set(ob, a, v);
            }
            if (!p.is_zero()) res.proj.comp[deg] = std::move(p);
            if (!inc.is_zero()) res.incl.comp[deg] = std::move(inc);
        }
    }
    return res;
}

HomologySummary homology_direct(const ChainComplex& c) {
    HomologySummary h;
    std::map<int, SmithResult> sm;
    for (int deg = c.lo; deg <= c.hi() + 1; ++deg) sm.emplace(deg, smith(c.diff(deg)));
    for (int deg = c.lo; deg <= c.hi(); ++deg) {
        long long betti = c.rank_at(deg) - sm.at(deg).rank - sm.at(deg + 1).rank;
        std::vector<Int> torsion;
        for (auto& v : sm.at(deg + 1).divisors)
            if (v > 1) torsion.push_back(v);
        if (betti != 0 || !torsion.empty()) h.groups[deg] = {betti, torsion};
    }
    return h;
}

HomologySummary homology(const ChainComplex& c) { return homology_direct(reduce(c, false).core); }

bool is_acyclic(const ChainComplex& c) { return homology(c).trivial(); }

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f)); }

ChainComplex shift(const ChainComplex& c, int k) {
    ChainComplex out = c;
    out.lo += k;
    if (k % 2 != 0)
        for (auto& m : out.d) m = -m;
    return out;
}

ChainMap shift_map(const ChainMap& f, int k) {
    ChainMap out{shift(f.src, k), shift(f.dst, k), {}};
    for (auto& [deg, m] : f.comp) out.comp[deg + k] = m;
    return out;
}

DsumResult dsum(const std::vector<ChainComplex>& parts) {
    DsumResult res;
    int lo = 0, hi = -1;
    bool first = true;
    for (auto& p : parts) {
        if (p.ranks.empty()) continue;
        if (first) {
            lo = p.lo;
            hi = p.hi();
            first = false;
        } else {
            lo = std::min(lo, p.lo);
            hi = std::max(hi, p.hi());
        }
    }
    if (first) {
        res.sum = zero_complex();
        for (auto& p : parts) {
            res.incl.push_back(zero_map(p, res.sum));
            res.proj.push_back(zero_map(res.sum, p));
        }
        return res;
    }
    res.sum.lo = lo;
    res.sum.ranks.assign(hi - lo + 1, 0);
    std::vector<std::vector<int>> offset(parts.size(), std::vector<int>(hi - lo + 1, 0));
    for (size_t k = 0; k < parts.size(); ++k)
        for (int deg = lo; deg <= hi; ++deg) {
            offset[k][deg - lo] = res.sum.ranks[deg - lo];
            res.sum.ranks[deg - lo] += parts[k].rank_at(deg);
        }
    res.sum.d.resize(res.sum.ranks.size());
    for (int deg = lo; deg <= hi; ++deg) {
        IntMat m(deg == lo ? 0 : res.sum.ranks[deg - 1 - lo], res.sum.ranks[deg - lo]);
        if (deg > lo)
            for (size_t k = 0; k < parts.size(); ++k) m.place(parts[k].diff(deg), offset[k][deg - 1 - lo], offset[k][deg - lo]);
        res.sum.d[deg - lo] = std::move(m);
    }
    for (size_t k = 0; k < parts.size(); ++k) {
        ChainMap inc{parts[k], res.sum, {}};
        ChainMap prj{res.sum, parts[k], {}};
        for (int deg = lo; deg <= hi; ++deg) {
            int r = parts[k].rank_at(deg);
            if (r == 0) continue;
            IntMat mi(res.sum.ranks[deg - lo], r), mp(r, res.sum.ranks[deg - lo]);
            for (int a = 0; a < r; ++a) {
                mi.set(offset[k][deg - lo] + a, a, 1);
                mp.set(a, offset[k][deg - lo] + a, 1);
            }
            inc.comp[deg] = std::move(mi);
            prj.comp[deg] = std::move(mp);
        }
        res.incl.push_back(std::move(inc));
        res.proj.push_back(std::move(prj));
    }
    return res;
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
    ChainComplex out;
    if (a.ranks.empty() || b.ranks.empty()) return out;
    out.lo = a.lo + b.lo;
    int hi = a.hi() + b.hi();
    out.ranks.assign(hi - out.lo + 1, 0);
    // block offsets per total degree, keyed by a-degree
    std::vector<std::map<int, int>> off(out.ranks.size());
    for (int n = out.lo; n <= hi; ++n)
        for (int i = a.lo; i <= a.hi(); ++i) {
            int j = n - i;
            int r = a.rank_at(i) * b.rank_at(j);
            if (r == 0) continue;
            off[n - out.lo][i] = out.ranks[n - out.lo];
            out.ranks[n - out.lo] += r;
        }
    out.d.resize(out.ranks.size());
    for (int n = out.lo; n <= hi; ++n) {
        IntMat m(n == out.lo ? 0 : out.ranks[n - 1 - out.lo], out.ranks[n - out.lo]);
        if (n > out.lo) {
            for (auto& [i, colbase] : off[n - out.lo]) {
                int j = n - i;
                int ra = a.rank_at(i), rb = b.rank_at(j);
                IntMat da = a.diff(i), db = b.diff(j);
                // d(x (x) y) = dx (x) y + (-1)^i x (x) dy
                auto it1 = off[n - 1 - out.lo].find(i - 1);
                if (it1 != off[n - 1 - out.lo].end())
                    for (int x2 = 0; x2 < da.rows(); ++x2)
                        for (auto& [x, v] : da.row(x2))
                            for (int y = 0; y < rb; ++y) m.add(it1->second + x2 * rb + y, colbase + x * rb + y, v);
                auto it2 = off[n - 1 - out.lo].find(i);
                if (it2 != off[n - 1 - out.lo].end()) {
                    int sign = (i % 2 == 0) ? 1 : -1;
                    for (int y2 = 0; y2 < db.rows(); ++y2)
                        for (auto& [y, v] : db.row(y2))
                            for (int x = 0; x < ra; ++x) m.add(it2->second + x * db.rows() + y2, colbase + x * rb + y, v * sign);
                }
            }
        }
        out.d[n - out.lo] = std::move(m);
    }
    out.trim();
    return out;
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
    ChainComplex src = tensor(f.src, g.src);
    ChainComplex dst = tensor(f.dst, g.dst);
    ChainMap out{src, dst, {}};
    // rebuild offsets the same way tensor() lays them out
    auto offsets = [](const ChainComplex& a, const ChainComplex& b, int n) {
        std::map<int, int> off;
        int acc = 0;
        for (int i = a.lo; i <= a.hi(); ++i) {
            int r = a.rank_at(i) * b.rank_at(n - i);
            if (r == 0) continue;
            off[i] = acc;
            acc += r;
        }
        return off;
    };
    for (int n = src.lo; n <= src.hi(); ++n) {
        if (src.rank_at(n) == 0 || dst.rank_at(n) == 0) continue;
        IntMat m(dst.rank_at(n), src.rank_at(n));
        auto soff = offsets(f.src, g.src, n);
        auto doff = offsets(f.dst, g.dst, n);
        for (auto& [i, sbase] : soff) {
            int j = n - i;
            IntMat fi = f.at(i), gj = g.at(j);
            int rb = g.src.rank_at(j);
            // maps need no Koszul sign in degree 0
            for (int x2 = 0; x2 < fi.rows(); ++x2)
                for (auto& [x, fv] : fi.row(x2))
                    for (int y2 = 0; y2 < gj.rows(); ++y2)
                        for (auto& [y, gv] : gj.row(y2)) {
                            auto it = doff.find(i);
                            if (it == doff.end()) continue;
                            m.add(it->second + x2 * g.dst.rank_at(j) + y2, sbase + x * rb + y, fv * gv);
                        }
        }
        if (!m.is_zero()) out.comp[n] = std::move(m);
    }
    return out;
}

ChainComplex cotensor_complex(const ChainComplex& c, const ChainComplex& w) {
    ChainComplex out;
    if (c.ranks.empty() || w.ranks.empty()) return out;
    out.lo = c.lo - w.hi();
    int hi = c.hi() - w.lo;
    out.ranks.assign(hi - out.lo + 1, 0);
    std::vector<std::map<int, int>> off(out.ranks.size());
    for (int n = out.lo; n <= hi; ++n)
        for (int k = w.lo; k <= w.hi(); ++k) {
            int r = w.rank_at(k) * c.rank_at(k + n);
            if (r == 0) continue;
            off[n - out.lo][k] = out.ranks[n - out.lo];
            out.ranks[n - out.lo] += r;
        }
    out.d.resize(out.ranks.size());
    for (int n = out.lo; n <= hi; ++n) {
        IntMat m(n == out.lo ? 0 : out.ranks[n - 1 - out.lo], out.ranks[n - out.lo]);
        if (n > out.lo) {
            for (auto& [k, colbase] : off[n - out.lo]) {
                int rc = c.rank_at(k + n);
                // d_C o phi: block k -> k
                auto it1 = off[n - 1 - out.lo].find(k);
                if (it1 != off[n - 1 - out.lo].end()) {
                    IntMat dc = c.diff(k + n);
                    for (int c2 = 0; c2 < dc.rows(); ++c2)
                        for (auto& [c1, v] : dc.row(c2))
                            for (int ww = 0; ww < w.rank_at(k); ++ww)
                                m.add(it1->second + ww * dc.rows() + c2, colbase + ww * rc + c1, v);
                }
                // -(-1)^n phi o d_W: block k -> k+1
                auto it2 = off[n - 1 - out.lo].find(k + 1);
                if (it2 != off[n - 1 - out.lo].end()) {
                    IntMat dw = w.diff(k + 1);
                    int sign = (n % 2 == 0) ? -1 : 1;
                    for (int wt = 0; wt < dw.rows(); ++wt)
                        for (auto& [ws, v] : dw.row(wt))
                            for (int cc = 0; cc < rc; ++cc)
                                m.add(it2->second + ws * rc + cc, colbase + wt * rc + cc, v * sign);
                }
            }
        }
        out.d[n - out.lo] = std::move(m);
    }
    out.trim();
    return out;
}

ChainComplex cone(const ChainMap& f) {
    const ChainComplex& x = f.src;
    const ChainComplex& y = f.dst;
    ChainComplex out;
    if (x.ranks.empty() && y.ranks.empty()) return out;
    int lo = x.ranks.empty() ? y.lo : (y.ranks.empty() ? x.lo + 1 : std::min(x.lo + 1, y.lo));
    int hi = x.ranks.empty() ? y.hi() : (y.ranks.empty() ? x.hi() + 1 : std::max(x.hi() + 1, y.hi()));
    out.lo = lo;
    out.ranks.assign(hi - lo + 1, 0);
    for (int n = lo; n <= hi; ++n) out.ranks[n - lo] = x.rank_at(n - 1) + y.rank_at(n);
    out.d.resize(out.ranks.size());
    for (int n = lo; n <= hi; ++n) {
        IntMat m(n == lo ? 0 : out.ranks[n - 1 - lo], out.ranks[n - lo]);
        if (n > lo) {
            int rx = x.rank_at(n - 1);
            // d(x, y) = (-dx, f x + dy)
            m.place(-x.diff(n - 1), 0, 0);
            m.place(f.at(n - 1), x.rank_at(n - 2), 0);
            m.place(y.diff(n), x.rank_at(n - 2), rx);
        }
        out.d[n - lo] = std::move(m);
    }
    out.trim();
    return out;
}

// ---- diagrams and Bousfield-Kan totals ----

ValidationReport Diagram::validate() const {
    ValidationReport rep;
    if ((int)value.size() != shape.object_count() || (int)action.size() != shape.morphism_count()) {
        rep.violations.push_back("table sizes mismatch");
        return rep;
    }
    for (int m = 0; m < shape.morphism_count(); ++m) {
        if (action[m].src.fingerprint() != value[shape.src(m)].fingerprint() ||
            action[m].dst.fingerprint() != value[shape.dst(m)].fingerprint()) {
            rep.violations.push_back("action endpoints wrong at " + shape.morph(m).name);
            continue;
        }
        ValidationReport mr = action[m].validate();
        if (!mr.ok()) rep.violations.push_back("action not a chain map at " + shape.morph(m).name);
    }
    if (!rep.ok()) return rep;
    for (int o = 0; o < shape.object_count(); ++o) {
        ChainMap d = add_maps(action[shape.identity(o)], negate_map(identity_map(value[o])));
        bool zero = true;
        for (auto& kv : d.comp) zero &= kv.second.is_zero();
        if (!zero) rep.violations.push_back("identity acts nontrivially at " + shape.object_label(o));
    }
    for (int g = 0; g < shape.morphism_count(); ++g)
        for (int f = 0; f < shape.morphism_count(); ++f) {
            if (!shape.composable(g, f)) continue;
            ChainMap lhs = action[shape.compose(g, f)];
            ChainMap rhs = compose_maps(action[g], action[f]);
            ChainMap d = add_maps(lhs, negate_map(rhs));
            bool zero = true;
            for (auto& kv : d.comp) zero &= kv.second.is_zero();
            if (!zero)
                rep.violations.push_back("functoriality fails on (" + shape.morph(g).name + ", " + shape.morph(f).name + ")");
        }
    return rep;
}

Diagram restrict_diagram(const Diagram& x, const CatFunctor& u) {
    Diagram out;
    out.shape = u.source;
    for (int o = 0; o < u.source.object_count(); ++o) out.value.push_back(x.value[u.obj_map[o]]);
    for (int m = 0; m < u.source.morphism_count(); ++m) out.action.push_back(x.action[u.mor_map[m]]);
    return out;
}

int TotalLayout::vertex_of(int p, int c) const {
    const Chain& ch = chains.by_dim[p][c];
    return colimit_side ? ch.objects.front() : ch.objects.back();
}

int TotalLayout::offset_of(int deg, int p, int c) const {
    int i = deg - lo;
    if (i < 0 || i >= (int)offsets.size()) return -1;
    auto it = offsets[i].find({p, c});
    return it == offsets[i].end() ? -1 : it->second;
}

namespace {

void check_or_throw(const ChainComplex& c, const char* what) {
    ValidationReport rep = c.validate();
    if (!rep.ok()) throw std::logic_error(std::string(what) + ": " + rep.violations.front());
}

void check_or_throw(const ChainMap& f, const char* what) {
    ValidationReport rep = f.validate();
    if (!rep.ok()) throw std::logic_error(std::string(what) + ": " + rep.violations.front());
}

}  // namespace

HocolimResult hocolim(const Diagram& x) {
    HocolimResult res;
    TotalLayout& lay = res.layout;
    lay.colimit_side = true;
    lay.chains = enumerate_chains(x.shape);
    int maxp = lay.chains.dim();
    // support
    int lo = 0, hi = -1;
    bool first = true;
    for (int p = 0; p <= maxp; ++p)
        for (int c = 0; c < lay.chains.count(p); ++c) {
            const ChainComplex& v = x.value[lay.vertex_of(p, c)];
            if (v.ranks.empty()) continue;
            int a = v.lo + p, b = v.hi() + p;
            if (first) {
                lo = a;
                hi = b;
                first = false;
            } else {
                lo = std::min(lo, a);
                hi = std::max(hi, b);
            }
        }
    if (first) {
        res.total = zero_complex();
        for (int o = 0; o < x.shape.object_count(); ++o) res.cocone.push_back(zero_map(x.value[o], res.total));
        return res;
    }
    lay.lo = lo;
    lay.offsets.assign(hi - lo + 1, {});
    res.total.lo = lo;
    res.total.ranks.assign(hi - lo + 1, 0);
    for (int n = lo; n <= hi; ++n)
        for (int p = 0; p <= maxp; ++p)
            for (int c = 0; c < lay.chains.count(p); ++c) {
                int r = x.value[lay.vertex_of(p, c)].rank_at(n - p);
                if (r == 0) continue;
                lay.offsets[n - lo][{p, c}] = res.total.ranks[n - lo];
                res.total.ranks[n - lo] += r;
            }
    res.total.d.resize(res.total.ranks.size());
    for (int n = lo; n <= hi; ++n) {
        IntMat m(n == lo ? 0 : res.total.ranks[n - 1 - lo], res.total.ranks[n - lo]);
        if (n > lo) {
            for (auto& [key, colbase] : lay.offsets[n - lo]) {
                auto [p, c] = key;
                int q = n - p;
                const ChainComplex& v = x.value[lay.vertex_of(p, c)];
                // internal differential with sign (-1)^p
                int off_int = lay.offset_of(n - 1, p, c);
                if (off_int >= 0) {
                    IntMat dv = v.diff(q);
                    int sign = (p % 2 == 0) ? 1 : -1;
                    for (int r2 = 0; r2 < dv.rows(); ++r2)
                        for (auto& [b, val] : dv.row(r2)) m.add(off_int + r2, colbase + b, val * sign);
                }
                // simplicial faces
                for (int i = 0; i <= p && p > 0; ++i) {
                    int c2 = lay.chains.face[p][c][i];
                    if (c2 < 0) continue;
                    int off2 = lay.offset_of(n - 1, p - 1, c2);
                    if (off2 < 0) continue;
                    int sign = (i % 2 == 0) ? 1 : -1;
                    if (i == 0) {
                        // value pushes along the first arrow
                        const ChainMap& a = x.action[lay.chains.by_dim[p][c].mors.front()];
                        IntMat am = a.at(q);
                        for (int r2 = 0; r2 < am.rows(); ++r2)
                            for (auto& [b, val] : am.row(r2)) m.add(off2 + r2, colbase + b, val * sign);
                    } else {
                        int r = v.rank_at(q);
                        for (int b = 0; b < r; ++b) m.add(off2 + b, colbase + b, sign);
                    }
                }
            }
        }
        res.total.d[n - lo] = std::move(m);
    }
    check_or_throw(res.total, "hocolim total");
    for (int o = 0; o < x.shape.object_count(); ++o) {
        ChainMap inc{x.value[o], res.total, {}};
        for (int q = x.value[o].lo; q <= x.value[o].hi(); ++q) {
            int r = x.value[o].rank_at(q);
            if (r == 0) continue;
            int off = lay.offset_of(q, 0, o);
            IntMat mm(res.total.rank_at(q), r);
            for (int b = 0; b < r; ++b) mm.set(off + b, b, 1);
            inc.comp[q] = std::move(mm);
        }
        check_or_throw(inc, "hocolim cocone");
        res.cocone.push_back(std::move(inc));
    }
    return res;
}

HolimResult holim(const Diagram& x) {
    HolimResult res;
    TotalLayout& lay = res.layout;
    lay.colimit_side = false;
    lay.chains = enumerate_chains(x.shape);
    int maxp = lay.chains.dim();
    int lo = 0, hi = -1;
    bool first = true;
    for (int p = 0; p <= maxp; ++p)
        for (int c = 0; c < lay.chains.count(p); ++c) {
            const ChainComplex& v = x.value[lay.vertex_of(p, c)];
            if (v.ranks.empty()) continue;
            int a = v.lo - p, b = v.hi() - p;
            if (first) {
                lo = a;
                hi = b;
                first = false;
            } else {
                lo = std::min(lo, a);
                hi = std::max(hi, b);
            }
        }
    if (first) {
        res.total = zero_complex();
        for (int o = 0; o < x.shape.object_count(); ++o) res.cone.push_back(zero_map(res.total, x.value[o]));
        return res;
    }
    lay.lo = lo;
    lay.offsets.assign(hi - lo + 1, {});
    res.total.lo = lo;
    res.total.ranks.assign(hi - lo + 1, 0);
    for (int n = lo; n <= hi; ++n)
        for (int p = 0; p <= maxp; ++p)
            for (int c = 0; c < lay.chains.count(p); ++c) {
                int r = x.value[lay.vertex_of(p, c)].rank_at(n + p);
                if (r == 0) continue;
                lay.offsets[n - lo][{p, c}] = res.total.ranks[n - lo];
                res.total.ranks[n - lo] += r;
            }
    res.total.d.resize(res.total.ranks.size());
    for (int n = lo; n <= hi; ++n) {
        IntMat m(n == lo ? 0 : res.total.ranks[n - 1 - lo], res.total.ranks[n - lo]);
        if (n > lo) {
            for (auto& [key, colbase] : lay.offsets[n - lo]) {
                auto [p, c] = key;
                int q = n + p;
                const ChainComplex& v = x.value[lay.vertex_of(p, c)];
                // internal differential with sign (-1)^p
                int off_int = lay.offset_of(n - 1, p, c);
                if (off_int >= 0) {
                    IntMat dv = v.diff(q);
                    int sign = (p % 2 == 0) ? 1 : -1;
                    for (int r2 = 0; r2 < dv.rows(); ++r2)
                        for (auto& [b, val] : dv.row(r2)) m.add(off_int + r2, colbase + b, val * sign);
                }
                // cosimplicial differential: this block feeds every (p+1)-chain
                // having it as a face
                if (p + 1 <= maxp)
                    for (int t = 0; t < lay.chains.count(p + 1); ++t) {
                        int off2 = lay.offset_of(n - 1, p + 1, t);
                        if (off2 < 0) continue;
                        for (int i = 0; i <= p + 1; ++i) {
                            if (lay.chains.face[p + 1][t][i] != c) continue;
                            int sign = (i % 2 == 0) ? 1 : -1;
                            if (i == p + 1) {
                                const ChainMap& a = x.action[lay.chains.by_dim[p + 1][t].mors.back()];
                                IntMat am = a.at(q);
                                for (int r2 = 0; r2 < am.rows(); ++r2)
                                    for (auto& [b, val] : am.row(r2)) m.add(off2 + r2, colbase + b, val * sign);
                            } else {
                                int r = v.rank_at(q);
                                for (int b = 0; b < r; ++b) m.add(off2 + b, colbase + b, sign);
                            }
                        }
                    }
            }
        }
        res.total.d[n - lo] = std::move(m);
    }
    check_or_throw(res.total, "holim total");
    for (int o = 0; o < x.shape.object_count(); ++o) {
        ChainMap prj{res.total, x.value[o], {}};
        for (int q = x.value[o].lo; q <= x.value[o].hi(); ++q) {
            int r = x.value[o].rank_at(q);
            if (r == 0) continue;
            int off = lay.offset_of(q, 0, o);
            IntMat mm(r, res.total.rank_at(q));
            for (int b = 0; b < r; ++b) mm.set(b, off + b, 1);
            prj.comp[q] = std::move(mm);
        }
        res.cone.push_back(std::move(prj));
    }
    return res;
}

Diagram fibrant_replace(const Diagram& x) { return x; }
Diagram cofibrant_replace(const Diagram& x) { return x; }
HolimResult corrected_holim(const Diagram& x) { return holim(fibrant_replace(x)); }
HocolimResult corrected_hocolim(const Diagram& x) { return hocolim(cofibrant_replace(x)); }

namespace {

void check_objectwise(const Diagram& x, const Diagram& y, const std::vector<ChainMap>& phi, bool colimit_side) {
    if ((int)phi.size() != x.shape.object_count()) throw std::invalid_argument("objectwise map count mismatch");
    for (int m = 0; m < x.shape.morphism_count(); ++m) {
        ChainMap lhs = compose_maps(phi[x.shape.dst(m)], x.action[m]);
        ChainMap rhs = compose_maps(y.action[m], phi[x.shape.src(m)]);
        ChainMap d = add_maps(lhs, negate_map(rhs));
        for (auto& kv : d.comp)
            if (!kv.second.is_zero())
                throw std::invalid_argument(std::string(colimit_side ? "hocolim_map" : "holim_map") +
                                            ": not a strict natural transformation at " + x.shape.morph(m).name);
    }
}

}  // namespace

ChainMap hocolim_map(const Diagram& x, const Diagram& y, const std::vector<ChainMap>& phi) {
    check_objectwise(x, y, phi, true);
    HocolimResult hx = hocolim(x), hy = hocolim(y);
    ChainMap out{hx.total, hy.total, {}};
    for (int n = hx.total.lo; n <= hx.total.hi(); ++n) {
        IntMat m(hy.total.rank_at(n), hx.total.rank_at(n));
        for (auto& [key, colbase] : hx.layout.offsets[n - hx.layout.lo]) {
            auto [p, c] = key;
            int q = n - p;
            int off2 = hy.layout.offset_of(n, p, c);
            if (off2 < 0) continue;
            IntMat pm = phi[hx.layout.vertex_of(p, c)].at(q);
            for (int r2 = 0; r2 < pm.rows(); ++r2)
                for (auto& [b, val] : pm.row(r2)) m.add(off2 + r2, colbase + b, val);
        }
        if (!m.is_zero()) out.comp[n] = std::move(m);
    }
    check_or_throw(out, "hocolim_map");
    return out;
}

ChainMap holim_map(const Diagram& x, const Diagram& y, const std::vector<ChainMap>& phi) {
    check_objectwise(x, y, phi, false);
    HolimResult hx = holim(x), hy = holim(y);
    ChainMap out{hx.total, hy.total, {}};
    for (int n = hx.total.lo; n <= hx.total.hi(); ++n) {
        IntMat m(hy.total.rank_at(n), hx.total.rank_at(n));
        for (auto& [key, colbase] : hx.layout.offsets[n - hx.layout.lo]) {
            auto [p, c] = key;
            int q = n + p;
            int off2 = hy.layout.offset_of(n, p, c);
            if (off2 < 0) continue;
            IntMat pm = phi[hx.layout.vertex_of(p, c)].at(q);
            for (int r2 = 0; r2 < pm.rows(); ++r2)
                for (auto& [b, val] : pm.row(r2)) m.add(off2 + r2, colbase + b, val);
        }
        if (!m.is_zero()) out.comp[n] = std::move(m);
    }
    check_or_throw(out, "holim_map");
    return out;
}

namespace {

// image of a chain under a functor; -1 when it degenerates
int map_chain(const CatFunctor& u, const ChainIndex& src, const ChainIndex& dst, int p, int c) {
    const Chain& ch = src.by_dim[p][c];
    Chain img;
    for (int o : ch.objects) img.objects.push_back(u.obj_map[o]);
    for (int m : ch.mors) {
        int um = u.mor_map[m];
        if (u.target.is_identity(um)) return -1;
        img.mors.push_back(um);
    }
    return dst.find(p, img);
}

}  // namespace

ChainMap hocolim_reindex(const CatFunctor& u, const Diagram& x) {
    Diagram xu = restrict_diagram(x, u);
    HocolimResult hi = hocolim(xu), hj = hocolim(x);
    ChainMap out{hi.total, hj.total, {}};
    for (int n = hi.total.lo; n <= hi.total.hi(); ++n) {
        IntMat m(hj.total.rank_at(n), hi.total.rank_at(n));
        for (auto& [key, colbase] : hi.layout.offsets[n - hi.layout.lo]) {
            auto [p, c] = key;
            int cj = map_chain(u, hi.layout.chains, hj.layout.chains, p, c);
            if (cj < 0) continue;
            int off2 = hj.layout.offset_of(n, p, cj);
            if (off2 < 0) continue;
            int r = xu.value[hi.layout.vertex_of(p, c)].rank_at(n - p);
            for (int b = 0; b < r; ++b) m.add(off2 + b, colbase + b, 1);
        }
        if (!m.is_zero()) out.comp[n] = std::move(m);
    }
    check_or_throw(out, "hocolim_reindex");
    return out;
}

ChainMap holim_restrict(const CatFunctor& u, const Diagram& x) {
    Diagram xu = restrict_diagram(x, u);
    HolimResult hj = holim(x), hi = holim(xu);
    ChainMap out{hj.total, hi.total, {}};
    for (int n = hi.total.lo; n <= hi.total.hi(); ++n) {
        IntMat m(hi.total.rank_at(n), hj.total.rank_at(n));
        for (auto& [key, rowbase] : hi.layout.offsets[n - hi.layout.lo]) {
            auto [p, c] = key;
            int cj = map_chain(u, hi.layout.chains, hj.layout.chains, p, c);
            if (cj < 0) continue;
            int off2 = hj.layout.offset_of(n, p, cj);
            if (off2 < 0) continue;
            int r = xu.value[hi.layout.vertex_of(p, c)].rank_at(n + p);
            for (int b = 0; b < r; ++b) m.add(rowbase + b, off2 + b, 1);
        }
        if (!m.is_zero()) out.comp[n] = std::move(m);
    }
    check_or_throw(out, "holim_restrict");
    return out;
}

ChainMap map_into_holim(const ChainComplex& z, const Diagram& x, const std::vector<ChainMap>& components) {
    for (int m = 0; m < x.shape.morphism_count(); ++m) {
        ChainMap lhs = compose_maps(x.action[m], components[x.shape.src(m)]);
        ChainMap d = add_maps(lhs, negate_map(components[x.shape.dst(m)]));
        for (auto& kv : d.comp)
            if (!kv.second.is_zero())
                throw std::invalid_argument("map_into_holim: components are not a strict cone at " +
                                            x.shape.morph(m).name);
    }
    HolimResult h = holim(x);
    ChainMap out{z, h.total, {}};
    for (int n = z.lo; n <= z.hi(); ++n) {
        if (z.rank_at(n) == 0 || h.total.rank_at(n) == 0) continue;
        IntMat m(h.total.rank_at(n), z.rank_at(n));
        for (int o = 0; o < x.shape.object_count(); ++o) {
            int off = h.layout.offset_of(n, 0, o);
            if (off < 0) continue;
            IntMat cm = components[o].at(n);
            for (int r2 = 0; r2 < cm.rows(); ++r2)
                for (auto& [b, val] : cm.row(r2)) m.add(off + r2, b, val);
        }
        if (!m.is_zero()) out.comp[n] = std::move(m);
    }
    check_or_throw(out, "map_into_holim");
    return out;
}

ChainMap map_from_hocolim(const Diagram& x, const ChainComplex& z, const std::vector<ChainMap>& components) {
    for (int m = 0; m < x.shape.morphism_count(); ++m) {
        ChainMap lhs = compose_maps(components[x.shape.dst(m)], x.action[m]);
        ChainMap d = add_maps(lhs, negate_map(components[x.shape.src(m)]));
        for (auto& kv : d.comp)
            if (!kv.second.is_zero())
                throw std::invalid_argument("map_from_hocolim: components are not a strict cocone at " +
                                            x.shape.morph(m).name);
    }
    HocolimResult h = hocolim(x);
    ChainMap out{h.total, z, {}};
    for (int n = h.total.lo; n <= h.total.hi(); ++n) {
        if (z.rank_at(n) == 0 || h.total.rank_at(n) == 0) continue;
        IntMat m(z.rank_at(n), h.total.rank_at(n));
        for (int o = 0; o < x.shape.object_count(); ++o) {
            int off = h.layout.offset_of(n, 0, o);
            if (off < 0) continue;
            IntMat cm = components[o].at(n);
            for (int r2 = 0; r2 < cm.rows(); ++r2)
                for (auto& [b, val] : cm.row(r2)) m.add(r2, off + b, val);
        }
        if (!m.is_zero()) out.comp[n] = std::move(m);
    }
    check_or_throw(out, "map_from_hocolim");
    return out;
}

ChainComplex chf(const ChainMap& f) {
    Diagram cospan;
    cospan.shape = pb_category();
    cospan.value = {f.src, f.dst, zero_complex()};
    cospan.action.resize(cospan.shape.morphism_count());
    for (int o = 0; o < 3; ++o) cospan.action[cospan.shape.identity(o)] = identity_map(cospan.value[o]);
    for (int m = 0; m < cospan.shape.morphism_count(); ++m) {
        if (cospan.shape.is_identity(m)) continue;
        if (cospan.shape.src(m) == 0)
            cospan.action[m] = f;
        else
            cospan.action[m] = zero_map(zero_complex(), f.dst);
    }
    return corrected_holim(cospan).total;
}

bool induces_zero_on_homology(const ChainMap& h) {
    Reduction ra = reduce(h.src, true);
    Reduction rb = reduce(h.dst, true);
    ChainMap small = compose_maps(rb.proj, compose_maps(h, ra.incl));
    const ChainComplex& a = ra.core;
    const ChainComplex& b = rb.core;
    for (int deg = a.lo; deg <= a.hi(); ++deg) {
        if (a.rank_at(deg) == 0) continue;
        IntMat cyc = kernel_basis(a.diff(deg));
        if (cyc.cols() == 0) continue;
        IntMat img = small.at(deg) * cyc;
        if (img.is_zero()) continue;
        if (b.rank_at(deg) == 0) return false;
        if (!solve_integer(b.diff(deg + 1), img).has_value()) return false;
    }
    return true;
}

bool maps_equal_on_homology(const ChainMap& f, const ChainMap& g) {
    return induces_zero_on_homology(add_maps(f, negate_map(g)));
}

// ---- randomness ----

unsigned long long Rng::next() {
    state += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

long long Rng::range(long long n) { return n <= 0 ? 0 : (long long)(next() % (unsigned long long)n); }

long long Rng::pick_int(long long lo, long long hi) { return lo + range(hi - lo + 1); }

ChainComplex random_complex(Rng& rng, int max_rank, int lo, int span) {
    // known-homology skeleton: free and torsion pieces, then a random
    // unimodular change of basis per degree
    std::vector<ChainComplex> parts;
    int pieces = 1 + (int)rng.range(3);
    for (int i = 0; i < pieces; ++i) {
        int deg = lo + (int)rng.range(span + 1);
        if (rng.range(3) == 0)
            parts.push_back(two_term(deg, Int(rng.pick_int(1, 3))));
        else
            parts.push_back(free_complex(deg, 1 + (int)rng.range(std::max(1, max_rank - 1))));
    }
    ChainComplex c = dsum(parts).sum;
    // clamp ranks by dropping nothing (sizes are small by construction)
    (void)max_rank;
    int ops = 3 * c.total_rank();
    for (int t = 0; t < ops; ++t) {
        int deg = c.lo + (int)rng.range((int)c.ranks.size());
        int r = c.rank_at(deg);
        if (r < 2) continue;
        int i = (int)rng.range(r), j = (int)rng.range(r);
        if (i == j) continue;
        Int coef = Int(rng.pick_int(-2, 2));
        if (coef == 0) continue;
        // basis change v_i' = v_i + coef v_j: d(deg) col j -= ... act as:
        // columns of d(deg): col_j += -? ; implement T = I + coef E_{ij}:
        // d_deg' = d_deg T^{-1}: col_j -= coef * col_i ... careful with index roles
        int di = deg - c.lo;
        if (di >= 1) {
            IntMat& m = c.d[di];
            for (int r2 = 0; r2 < m.rows(); ++r2) {
                Int vi = m.at(r2, i);
                if (vi != 0) m.add(r2, j, -coef * vi);
            }
        }
        if (di + 1 < (int)c.ranks.size()) {
            IntMat& m = c.d[di + 1];
            for (auto& [cc, v] : std::map<int, Int>(m.row(j))) m.add(i, cc, coef * v);
        }
    }
    ValidationReport rep = c.validate();
    if (!rep.ok()) throw std::logic_error("random_complex: " + rep.violations.front());
    return c;
}

ChainMap random_chain_map(Rng& rng, const ChainComplex& a, const ChainComplex& b, int coeff_bound) {
    // variables: entries of the components; constraints: commutation with d
    std::vector<std::tuple<int, int, int>> vars;  // (degree, row, col)
    std::map<int, int> var_base;
    for (int deg = a.lo; deg <= a.hi(); ++deg) {
        if (a.rank_at(deg) == 0 || b.rank_at(deg) == 0) continue;
        var_base[deg] = (int)vars.size();
        for (int r = 0; r < b.rank_at(deg); ++r)
            for (int c = 0; c < a.rank_at(deg); ++c) vars.push_back({deg, r, c});
    }
    if (vars.empty()) return zero_map(a, b);
    // constraint rows: for each degree, d_b * M_deg - M_{deg-1} * d_a = 0
    std::vector<std::map<int, Int>> rows;
    for (int deg = a.lo; deg <= a.hi() + 1; ++deg) {
        IntMat da = a.diff(deg);
        int rb1 = b.rank_at(deg - 1);
        if (a.rank_at(deg) == 0 || rb1 == 0) continue;
        for (int r = 0; r < rb1; ++r)
            for (int col = 0; col < a.rank_at(deg); ++col) {
                std::map<int, Int> row;
                // (d_b M)_{r,col} = sum_k d_b[r][k] M[k][col]
                if (var_base.count(deg)) {
                    IntMat db = b.diff(deg);
                    for (int k = 0; k < b.rank_at(deg); ++k) {
                        Int v = db.at(r, k);
                        if (v != 0) row[var_base[deg] + k * a.rank_at(deg) + col] += v;
                    }
                }
                if (var_base.count(deg - 1)) {
                    for (int k = 0; k < a.rank_at(deg - 1); ++k) {
                        Int v = da.at(k, col);
                        if (v != 0) row[var_base[deg - 1] + r * a.rank_at(deg - 1) + k] -= v;
                    }
                }
                for (auto it = row.begin(); it != row.end();)
                    it = it->second == 0 ? row.erase(it) : std::next(it);
                if (!row.empty()) rows.push_back(std::move(row));
            }
    }
    IntMat constraint((int)rows.size(), (int)vars.size());
    for (int r = 0; r < (int)rows.size(); ++r)
        for (auto& [c, v] : rows[r]) constraint.set(r, c, v);
    IntMat basis = rows.empty() ? IntMat::identity((int)vars.size()) : kernel_basis(constraint);
    ChainMap out = zero_map(a, b);
    if (basis.cols() == 0) return out;
    std::map<int, IntMat> comps;
    for (auto& [deg, base] : var_base) {
        (void)base;
        comps[deg] = IntMat(b.rank_at(deg), a.rank_at(deg));
    }
    for (int k = 0; k < basis.cols(); ++k) {
        Int coef = Int(rng.pick_int(-coeff_bound, coeff_bound));
        if (coef == 0) continue;
        for (int v = 0; v < (int)vars.size(); ++v) {
            Int e = basis.at(v, k);
            if (e == 0) continue;
            auto [deg, r, c] = vars[v];
            comps[deg].add(r, c, coef * e);
        }
    }
    for (auto& [deg, m] : comps)
        if (!m.is_zero()) out.comp[deg] = std::move(m);
    check_or_throw(out, "random_chain_map");
    return out;
}

}  // namespace fc

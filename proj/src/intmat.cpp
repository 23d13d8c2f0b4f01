#include "fc/intmat.hpp"

#include <sstream>
#include <stdexcept>

namespace fc {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Int IntMat::at(int i, int j) const {
    auto it = row_[i].find(j);
    return it == row_[i].end() ? Int(0) : it->second;
}

void IntMat::set(int i, int j, Int v) {
    if (v == 0)
        row_[i].erase(j);
    else
        row_[i][j] = std::move(v);
}

void IntMat::add(int i, int j, const Int& v) {
    if (v == 0) return;
    auto [it, inserted] = row_[i].try_emplace(j, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) row_[i].erase(it);
    }
}

bool IntMat::is_zero() const {
    for (auto& r : row_)
        if (!r.empty()) return false;
    return true;
}

int IntMat::nnz() const {
    int n = 0;
    for (auto& r : row_) n += (int)r.size();
    return n;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat: shape mismatch in product");
    IntMat out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [k, v] : row_[i])
            for (auto& [j, w] : o.row_[k]) out.add(i, j, v * w);
    return out;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat: shape mismatch in sum");
    IntMat out = *this;
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : o.row_[i]) out.add(i, j, v);
    return out;
}

IntMat IntMat::operator-(const IntMat& o) const { return *this + (-o); }

IntMat IntMat::operator-() const {
    IntMat out = *this;
    for (auto& r : out.row_)
        for (auto& [j, v] : r) v = -v;
    return out;
}

bool IntMat::operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
}

IntMat IntMat::transposed() const {
    IntMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : row_[i]) out.set(j, i, v);
    return out;
}

IntMat IntMat::scaled(const Int& c) const {
    IntMat out(rows_, cols_);
    if (c == 0) return out;
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : row_[i]) out.set(i, j, v * c);
    return out;
}

void IntMat::place(const IntMat& o, int r0, int c0) {
    for (int i = 0; i < o.rows_; ++i)
        for (auto& [j, v] : o.row_[i]) set(r0 + i, c0 + j, v);
}

std::string IntMat::repr() const {
    std::ostringstream os;
    os << rows_ << 'x' << cols_ << ';';
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : row_[i]) os << i << ',' << j << ':' << v << ';';
    return os.str();
}

IntMat hcat(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    IntMat out(a.rows(), a.cols() + b.cols());
    out.place(a, 0, 0);
    out.place(b, 0, a.cols());
    return out;
}

IntMat vcat(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: col mismatch");
    IntMat out(a.rows() + b.rows(), a.cols());
    out.place(a, 0, 0);
    out.place(b, a.rows(), 0);
    return out;
}

namespace {

// Dense working form for the elimination; cores handed to smith() are small.
struct Dense {
    int rows, cols;
    std::vector<std::vector<Int>> a;
    explicit Dense(const IntMat& m) : rows(m.rows()), cols(m.cols()), a(rows, std::vector<Int>(cols)) {
        for (int i = 0; i < rows; ++i)
            for (auto& [j, v] : m.row(i)) a[i][j] = v;
    }
};

void swap_rows(Dense& d, IntMat* l, int i, int j) {
    if (i == j) return;
    std::swap(d.a[i], d.a[j]);
    if (l) {
        IntMat& m = *l;
        IntMat t(m.rows(), m.cols());
        for (int r = 0; r < m.rows(); ++r) {
            int rr = r == i ? j : (r == j ? i : r);
            for (auto& [c, v] : m.row(rr)) t.set(r, c, v);
        }
        *l = std::move(t);
    }
}

void swap_cols(Dense& d, IntMat* r, int i, int j) {
    if (i == j) return;
    for (auto& row : d.a) std::swap(row[i], row[j]);
    if (r) {
        IntMat& m = *r;
        for (int rr = 0; rr < m.rows(); ++rr) {
            Int vi = m.at(rr, i), vj = m.at(rr, j);
            m.set(rr, i, vj);
            m.set(rr, j, vi);
        }
    }
}

// row[i] += f * row[j]
void add_row(Dense& d, IntMat* l, int i, int j, const Int& f) {
    for (int c = 0; c < d.cols; ++c)
        if (d.a[j][c] != 0) d.a[i][c] += f * d.a[j][c];
    if (l)
        for (auto [c, v] : std::map<int, Int>(l->row(j))) l->add(i, c, f * v);
}

// col[i] += f * col[j]
void add_col(Dense& d, IntMat* r, int i, int j, const Int& f) {
    for (int rr = 0; rr < d.rows; ++rr)
        if (d.a[rr][j] != 0) d.a[rr][i] += f * d.a[rr][j];
    if (r)
        for (int rr = 0; rr < r->rows(); ++rr) {
            Int vj = r->at(rr, j);
            if (vj != 0) r->add(rr, i, f * vj);
        }
}

}  // namespace

SmithResult smith(const IntMat& a, bool transforms) {
    SmithResult res;
    res.with_transforms = transforms;
    Dense d(a);
    IntMat left = IntMat::identity(a.rows());
    IntMat right = IntMat::identity(a.cols());
    IntMat* lp = transforms ? &left : nullptr;
    IntMat* rp = transforms ? &right : nullptr;

    int n = std::min(d.rows, d.cols);
    int s = 0;
    for (; s < n; ++s) {
        // find pivot: smallest nonzero absolute value in the remaining block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = s; i < d.rows; ++i)
            for (int j = s; j < d.cols; ++j) {
                if (d.a[i][j] == 0) continue;
                Int v = abs(d.a[i][j]);
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        swap_rows(d, lp, s, pi);
        swap_cols(d, rp, s, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = s + 1; i < d.rows; ++i) {
                if (d.a[i][s] == 0) continue;
                Int q = d.a[i][s] / d.a[s][s];
                add_row(d, lp, i, s, -q);
                if (d.a[i][s] != 0) {
                    // remainder strictly smaller; promote it to the pivot slot
                    swap_rows(d, lp, s, i);
                    clean = false;
                }
            }
            for (int j = s + 1; j < d.cols; ++j) {
                if (d.a[s][j] == 0) continue;
                Int q = d.a[s][j] / d.a[s][s];
                add_col(d, rp, j, s, -q);
                if (d.a[s][j] != 0) {
                    swap_cols(d, rp, s, j);
                    clean = false;
                }
            }
        }
        // divisibility: fold in any entry the pivot does not divide, retry
        bool retry = false;
        for (int i = s + 1; i < d.rows && !retry; ++i)
            for (int j = s + 1; j < d.cols && !retry; ++j)
                if (d.a[i][j] % d.a[s][s] != 0) {
                    add_row(d, lp, s, i, 1);
                    retry = true;
                }
        if (retry) {
            --s;
            continue;
        }
        if (d.a[s][s] < 0) {
            for (int c = 0; c < d.cols; ++c) d.a[s][c] = -d.a[s][c];
            if (lp)
                for (auto [c, v] : std::map<int, Int>(lp->row(s))) lp->set(s, c, -v);
        }
    }
    for (int i = 0; i < s; ++i) res.divisors.push_back(d.a[i][i]);
    res.rank = s;
    if (transforms) {
        res.left = std::move(left);
        res.right = std::move(right);
    }
    return res;
}

int rank_of(const IntMat& a) { return smith(a, false).rank; }

IntMat kernel_basis(const IntMat& a) {
    SmithResult s = smith(a, true);
    // L A R = D, so A (R e_j) = 0 for columns j >= rank.
    int k = a.cols() - s.rank;
    IntMat out(a.cols(), k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < a.cols(); ++i) {
            Int v = s.right.at(i, s.rank + j);
            if (v != 0) out.set(i, j, v);
        }
    return out;
}

std::optional<IntMat> solve_integer(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
    SmithResult s = smith(a, true);
    IntMat y = s.left * b;  // D z = y with x = R z
    IntMat z(a.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        for (int i = 0; i < y.rows(); ++i) {
            Int yi = y.at(i, c);
            if (i < s.rank) {
                if (yi % s.divisors[i] != 0) return std::nullopt;
                z.set(i, c, yi / s.divisors[i]);
            } else if (yi != 0) {
                return std::nullopt;
            }
        }
    }
    return s.right * z;
}

}  // namespace fc

#include "hv/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace hv {

namespace {

void require_same_dim(const CMat& A, const CMat& B, const char* op) {
    if (A.n != B.n)
        throw std::invalid_argument(std::string("matrix ") + op + ": dimension mismatch");
}

}  // namespace

CMat CMat::identity(long dim, mpfr_prec_t p) {
    CMat I(dim, p);
    for (long i = 0; i < dim; ++i) I.at(i, i) = Complex::of(1L, p);
    return I;
}

CMat operator+(const CMat& A, const CMat& B) {
    require_same_dim(A, B, "add");
    CMat C(A.n, std::max(A.prec, B.prec));
    for (size_t i = 0; i < A.e.size(); ++i) C.e[i] = A.e[i] + B.e[i];
    return C;
}

CMat operator-(const CMat& A, const CMat& B) {
    require_same_dim(A, B, "subtract");
    CMat C(A.n, std::max(A.prec, B.prec));
    for (size_t i = 0; i < A.e.size(); ++i) C.e[i] = A.e[i] - B.e[i];
    return C;
}

CMat operator*(const CMat& A, const CMat& B) {
    require_same_dim(A, B, "multiply");
    long n = A.n;
    CMat C(n, std::max(A.prec, B.prec));
    for (long i = 0; i < n; ++i) {
        for (long k = 0; k < n; ++k) {
            const Complex& a = A.at(i, k);
            if (a.is_zero()) continue;
            for (long j = 0; j < n; ++j) {
                const Complex& b = B.at(k, j);
                if (!b.is_zero()) C.at(i, j) += a * b;
            }
        }
    }
    return C;
}

CMat scale(const Complex& s, const CMat& A) {
    CMat C(A.n, std::max(A.prec, s.prec()));
    for (size_t i = 0; i < A.e.size(); ++i) C.e[i] = s * A.e[i];
    return C;
}

CMat kron(const CMat& A, const CMat& B) {
    long na = A.n, nb = B.n;
    CMat C(na * nb, std::max(A.prec, B.prec));
    for (long i = 0; i < na; ++i)
        for (long j = 0; j < na; ++j) {
            const Complex& a = A.at(i, j);
            if (a.is_zero()) continue;
            for (long k = 0; k < nb; ++k)
                for (long l = 0; l < nb; ++l) {
                    const Complex& b = B.at(k, l);
                    if (!b.is_zero()) C.at(i * nb + k, j * nb + l) = a * b;
                }
        }
    return C;
}

CMat adjoint(const CMat& A) {
    CMat C(A.n, A.prec);
    for (long i = 0; i < A.n; ++i)
        for (long j = 0; j < A.n; ++j) C.at(i, j) = conj(A.at(j, i));
    return C;
}

CMat inverse(const CMat& A) {
    long n = A.n;
    CMat W = A;
    CMat I = CMat::identity(n, A.prec);
    for (long col = 0; col < n; ++col) {
        long piv = col;
        Real best = cabs(W.at(col, col));
        for (long r = col + 1; r < n; ++r) {
            Real v = cabs(W.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < Real::pow2(-(A.prec - 8), A.prec))
            throw std::domain_error("matrix inverse: singular to working precision");
        if (piv != col)
            for (long j = 0; j < n; ++j) {
                std::swap(W.at(piv, j), W.at(col, j));
                std::swap(I.at(piv, j), I.at(col, j));
            }
        Complex d = W.at(col, col);
        for (long j = 0; j < n; ++j) {
            W.at(col, j) /= d;
            I.at(col, j) /= d;
        }
        for (long r = 0; r < n; ++r) {
            if (r == col) continue;
            Complex f = W.at(r, col);
            if (f.is_zero()) continue;
            for (long j = 0; j < n; ++j) {
                W.at(r, j) -= f * W.at(col, j);
                I.at(r, j) -= f * I.at(col, j);
            }
        }
    }
    return I;
}

Complex trace(const CMat& A) {
    Complex t = Complex::zero(A.prec);
    for (long i = 0; i < A.n; ++i) t += A.at(i, i);
    return t;
}

Real max_abs(const CMat& A) {
    Real m = Real::zero(A.prec);
    for (const Complex& v : A.e) m = max(m, cabs(v));
    return m;
}

Real commutator_norm(const CMat& A, const CMat& B) {
    return max_abs(A * B - B * A);
}

CMat embed_two_site(const CMat& A16, int slot_a, int slot_b, int nslots) {
    if (A16.n != 16) throw std::invalid_argument("embed_two_site: operator must be 16x16");
    if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= nslots || slot_b >= nslots)
        throw std::invalid_argument("embed_two_site: bad slot pair");
    long n = 1;
    for (int s = 0; s < nslots; ++s) n *= 4;
    CMat M(n, A16.prec);
    std::vector<int> ri(nslots), ci(nslots);
    for (long row = 0; row < n; ++row) {
        long r = row;
        for (int s = nslots - 1; s >= 0; --s) {
            ri[s] = static_cast<int>(r % 4);
            r /= 4;
        }
        for (long col = 0; col < n; ++col) {
            long c = col;
            for (int s = nslots - 1; s >= 0; --s) {
                ci[s] = static_cast<int>(c % 4);
                c /= 4;
            }
            bool spectator_mismatch = false;
            for (int s = 0; s < nslots; ++s)
                if (s != slot_a && s != slot_b && ri[s] != ci[s]) {
                    spectator_mismatch = true;
                    break;
                }
            if (spectator_mismatch) continue;
            const Complex& v = A16.at(4 * ri[slot_a] + ri[slot_b], 4 * ci[slot_a] + ci[slot_b]);
            if (!v.is_zero()) M.at(row, col) = v;
        }
    }
    return M;
}

}  // namespace hv

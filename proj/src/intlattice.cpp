#include "diagvar/intlattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace diagvar {

IntMatrix::IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {
  if (n == 0) throw Error("matrix size must be at least 1");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  IntMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error("row " + std::to_string(i + 1) + " has " +
                  std::to_string(rows[i].size()) + " entries, expected " +
                  std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntVector IntMatrix::diagonal() const {
  IntVector d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) throw MismatchError("matrix sizes differ");
  const std::size_t n = a.size();
  IntMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        mpz_addmul(c(i, j).get_mpz_t(), a(i, k).get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  }
  return c;
}

std::string format_matrix(const IntMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? "," : "") << a(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer int_det(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n > kMaxIntDetSize) {
    throw GuardError("int_det size guard exceeded: n = " + std::to_string(n) +
                     " > " + std::to_string(kMaxIntDetSize));
  }
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact by Sylvester's identity.
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  const Integer d = int_det(a);
  if (d != 1 && d != -1) {
    throw Error("matrix is not unimodular (det = " + d.get_str() + ")");
  }
  const std::size_t n = a.size();
  std::vector<mpq_class> w(n * 2 * n);
  auto at = [&](std::size_t i, std::size_t j) -> mpq_class& { return w[i * 2 * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = a(i, j);
    at(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (at(r, c) == 0) ++r;  // det != 0 guarantees a pivot
    if (r != c) {
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(r, j), at(c, j));
    }
    const mpq_class piv = at(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) at(c, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || at(i, c) == 0) continue;
      const mpq_class f = at(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) at(i, j) -= f * at(c, j);
    }
  }
  IntMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& q = at(i, n + j);
      if (q.get_den() != 1) throw Error("inverse has a non-integer entry");
      inv(i, j) = q.get_num();
    }
  }
  if (!(a * inv == IntMatrix::identity(n))) {
    throw Error("unimodular inverse failed verification");
  }
  return inv;
}

IntMatrix int_pow(const IntMatrix& a, long k) {
  IntMatrix base = k < 0 ? unimodular_inverse(a) : a;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1
                          : static_cast<unsigned long>(k);
  IntMatrix result = IntMatrix::identity(a.size());
  for (; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

IntMatrix diag_of_powers_matrix(const IntMatrix& a,
                                std::span<const long> exponents) {
  const std::size_t n = a.size();
  if (exponents.size() != n) {
    throw Error("expected " + std::to_string(n) + " exponents, got " +
                std::to_string(exponents.size()));
  }
  IntMatrix d(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto diag = int_pow(a, exponents[j]).diagonal();
    for (std::size_t i = 0; i < n; ++i) d(i, j) = diag[i];
  }
  return d;
}

bool spans_Zn(std::span<const IntVector> vectors) {
  if (vectors.empty()) throw Error("spans_Zn: empty vector list");
  const std::size_t n = vectors.front().size();
  if (n == 0) throw Error("spans_Zn: vectors must be non-empty");
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error("spans_Zn: vectors have different lengths");
  }
  if (vectors.size() < n) return false;

  // Row-style Hermite reduction: the lattice is Z^n iff every column gets a
  // pivot and every pivot is a unit.
  std::vector<IntVector> rows(vectors.begin(), vectors.end());
  std::size_t top = 0;
  for (std::size_t col = 0; col < n; ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) return false;
      std::swap(rows[top], rows[best]);
      bool reduced = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t c = col; c < n; ++c) rows[r][c] -= q * rows[top][c];
        if (rows[r][col] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (abs(rows[top][col]) != 1) return false;
    ++top;
  }
  return true;
}

IntMatrix anti_triangular_ones(std::size_t n) {
  IntMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j + 1 <= n; ++j) a(i, j) = 1;
  }
  return a;
}

IntMatrix tridiagonal_square_form(std::size_t n) {
  IntMatrix t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = i == 0 ? 1 : 2;
    if (i + 1 < n) {
      t(i, i + 1) = -1;
      t(i + 1, i) = -1;
    }
  }
  return t;
}

std::optional<int> odd_power_band_entry(std::size_t n, std::size_t j,
                                        std::size_t k, std::size_t l) {
  const std::size_t s = k + l;
  const int plus = j % 2 == 1 ? 1 : -1;  // (-1)^(j+1)
  if (s == n - j + 2) return plus;
  if (s == n + j + 1) return -plus;
  if (s + j <= n + 1 || s >= n + j + 2) return 0;
  return std::nullopt;
}

namespace {

IntMatrix window_diagonals_matrix(const std::vector<IntVector>& diags,
                                  const std::vector<std::size_t>& pick) {
  const std::size_t n = pick.size();
  IntMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = diags[pick[j]][i];
  }
  return m;
}

bool is_unit(const Integer& d) { return d == 1 || d == -1; }

}  // namespace

Lemma4Result lemma4_check(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n > kMaxLemma4Size) {
    throw GuardError("lemma4 size guard exceeded: n = " + std::to_string(n) +
                     " > " + std::to_string(kMaxLemma4Size));
  }
  const IntMatrix inv = unimodular_inverse(a);  // throws if not unimodular

  std::vector<long> natural(n);
  std::iota(natural.begin(), natural.end(), 0L);
  const IntMatrix d = diag_of_powers_matrix(a, natural);

  Lemma4Result r;
  r.a = is_unit(int_det(d));
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(d.column(j));
  r.b = spans_Zn(cols);

  // Diagonals of A^e for e in [-n, 2n].
  const long lo = -static_cast<long>(n);
  const long hi = 2 * static_cast<long>(n);
  std::vector<IntVector> diags(static_cast<std::size_t>(hi - lo + 1));
  IntMatrix pos = IntMatrix::identity(n);
  IntMatrix neg = IntMatrix::identity(n);
  diags[static_cast<std::size_t>(-lo)] = pos.diagonal();
  for (long e = 1; e <= hi; ++e) {
    pos = pos * a;
    diags[static_cast<std::size_t>(e - lo)] = pos.diagonal();
  }
  for (long e = 1; e <= -lo; ++e) {
    neg = neg * inv;
    diags[static_cast<std::size_t>(-e - lo)] = neg.diagonal();
  }

  // A subset can only span if the whole window does.
  if (!spans_Zn(diags)) return r;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  const std::size_t w = diags.size();
  for (;;) {
    if (is_unit(int_det(window_diagonals_matrix(diags, pick)))) {
      r.d = true;
      break;
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == w - n + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return r;
}

Lemma5Result verify_lemma5_formulas(std::size_t n, std::size_t j_max) {
  if (n < 2 || n > kMaxLemma5Size) {
    throw GuardError("lemma5 size guard: n = " + std::to_string(n) +
                     " outside [2, " + std::to_string(kMaxLemma5Size) + "]");
  }
  if (j_max > n - 1) {
    throw GuardError("lemma5 guard: j_max = " + std::to_string(j_max) +
                     " exceeds n - 1 = " + std::to_string(n - 1));
  }
  const IntMatrix a = anti_triangular_ones(n);
  const IntMatrix b = unimodular_inverse(a);
  const IntMatrix b2 = b * b;

  Lemma5Result r;
  r.b2 = b2 == tridiagonal_square_form(n);

  r.odd = true;
  IntMatrix odd = b;
  std::vector<IntVector> odd_diagonals;
  for (std::size_t j = 1; j <= n; ++j) {
    if (j > 1) odd = b2 * odd;
    odd_diagonals.push_back(odd.diagonal());
    if (j > j_max) continue;
    for (std::size_t k = 1; k <= n && r.odd; ++k) {
      for (std::size_t l = 1; l <= n; ++l) {
        const auto want = odd_power_band_entry(n, j, k, l);
        if (want && odd(k - 1, l - 1) != *want) {
          r.odd = false;
          r.mismatch = "j=" + std::to_string(j) + ", (" + std::to_string(k) +
                       "," + std::to_string(l) + "): got " +
                       odd(k - 1, l - 1).get_str() + ", want " +
                       std::to_string(*want);
          break;
        }
      }
    }
  }
  r.span = spans_Zn(odd_diagonals);

  std::vector<long> natural(n);
  std::iota(natural.begin(), natural.end(), 0L);
  r.p_of_a = int_det(diag_of_powers_matrix(a, natural));
  return r;
}

nlohmann::json to_json(const IntMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.size(); ++j) {
      const auto& v = a(i, j);
      if (abs(v) <= Integer(1L << 53)) {
        row.push_back(v.get_si());
      } else {
        row.push_back(v.get_str());
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"n", a.size()}, {"entries", rows}};
}

IntMatrix int_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0) {
    throw ParseError("field \"n\" must be a positive integer");
  }
  const auto n = j["n"].get<std::size_t>();
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw ParseError("field \"entries\" must be an array of rows");
  }
  const auto& rows = j["entries"];
  if (rows.size() != n) {
    throw ParseError("field \"entries\" has " + std::to_string(rows.size()) +
                     " rows, expected " + std::to_string(n));
  }
  const Integer limit = Integer(1L << 53);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError("row " + std::to_string(i + 1) + " must have " +
                       std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = row[k];
      const std::string where =
          "entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")";
      Integer v;
      if (e.is_number_integer()) {
        v = e.is_number_unsigned() ? Integer(e.get<std::uint64_t>())
                                   : Integer(e.get<std::int64_t>());
        if (abs(v) > limit) {
          throw ParseError(where + " exceeds 2^53 and must be a decimal string");
        }
      } else if (e.is_string()) {
        const auto s = e.get<std::string>();
        if (s.empty() || v.set_str(s, 10) != 0) {
          throw ParseError(where + " is not a decimal integer");
        }
      } else {
        throw ParseError(where + " must be an integer or a decimal string");
      }
      m(i, k) = std::move(v);
    }
  }
  return m;
}

}  // namespace diagvar

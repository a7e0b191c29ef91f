#include "advnet/gf.hpp"

#include <algorithm>

#include "advnet/error.hpp"

namespace advnet {

std::optional<PrimePower> prime_power(unsigned q) {
  if (q < 2) return std::nullopt;
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned m = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) return std::nullopt;
  return PrimePower{p, m};
}

namespace {

using Poly = std::vector<unsigned>;  // base-p digits, constant term first

Poly digits(unsigned value, unsigned p, unsigned m) {
  Poly d(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

unsigned from_digits(const Poly& d, unsigned p) {
  unsigned v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// a * b mod (monic modulus of degree m), over GF(p).
unsigned poly_mulmod(unsigned a, unsigned b, const Poly& modulus, unsigned p, unsigned m) {
  Poly x = digits(a, p, m), y = digits(b, p, m);
  Poly prod(2 * m, 0);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (unsigned deg = 2 * m - 1; deg >= m && deg < 2 * m; --deg) {
    unsigned c = prod[deg];
    if (c == 0) continue;
    // subtract c * x^{deg-m} * modulus
    for (unsigned i = 0; i <= m; ++i) {
      unsigned coef = i == m ? 1 : modulus[i];
      prod[deg - m + i] = (prod[deg - m + i] + (p - c) * coef % p) % p;
    }
  }
  prod.resize(m);
  return from_digits(prod, p);
}

Poly find_primitive(unsigned p, unsigned m) {
  const unsigned q = [&] { unsigned r = 1; for (unsigned i = 0; i < m; ++i) r *= p; return r; }();
  for (unsigned code = 0; code < q; ++code) {
    Poly modulus = digits(code, p, m);
    if (modulus[0] == 0) continue;
    // x has multiplicative order q-1 exactly when the polynomial is primitive.
    const unsigned x = m == 1 ? 0 : p;  // the element "x"
    if (m == 1) return modulus;
    unsigned power = 1;
    unsigned order = 0;
    do {
      power = poly_mulmod(power, x, modulus, p, m);
      ++order;
    } while (power != 1 && order < q);
    if (power == 1 && order == q - 1) return modulus;
  }
  throw Error(Errc::NotPrimePower, "no primitive polynomial found");
}

}  // namespace

Field::Field(unsigned q) : q_(q) {
  auto pp = prime_power(q);
  if (!pp || q > 256) throw Error(Errc::NotPrimePower, std::to_string(q));
  p_ = pp->prime;
  const unsigned m = pp->exponent;
  auto t = std::make_shared<Tables>();
  t->modulus = m == 1 ? Poly{0} : find_primitive(p_, m);
  t->add.resize(static_cast<std::size_t>(q) * q);
  t->mul.resize(static_cast<std::size_t>(q) * q);
  t->neg.resize(q);
  t->inv.resize(q, 0);
  for (unsigned a = 0; a < q; ++a) {
    Poly da = digits(a, p_, m);
    Poly dn(m);
    for (unsigned i = 0; i < m; ++i) dn[i] = (p_ - da[i]) % p_;
    t->neg[a] = static_cast<Symbol>(from_digits(dn, p_));
    for (unsigned b = 0; b < q; ++b) {
      Poly db = digits(b, p_, m);
      Poly ds(m);
      for (unsigned i = 0; i < m; ++i) ds[i] = (da[i] + db[i]) % p_;
      t->add[a * q + b] = static_cast<Symbol>(from_digits(ds, p_));
      unsigned prod = m == 1 ? (a * b) % p_ : poly_mulmod(a, b, t->modulus, p_, m);
      t->mul[a * q + b] = static_cast<Symbol>(prod);
    }
  }
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (t->mul[a * q + b] == 1) {
        t->inv[a] = static_cast<Symbol>(b);
        break;
      }
  tables_ = std::move(t);
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw Error(Errc::InvalidInput, "inverse of zero");
  return tables_->inv[a];
}

Symbol Field::pow(Symbol a, unsigned e) const {
  Symbol r = 1;
  for (unsigned i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Word apply(const Field& f, const FieldMatrix& m, std::span<const Symbol> x) {
  if (static_cast<int>(x.size()) != m.cols) throw Error(Errc::LengthMismatch, "matrix-vector size");
  Word y(static_cast<std::size_t>(m.rows), 0);
  for (int i = 0; i < m.rows; ++i) {
    Symbol acc = 0;
    for (int j = 0; j < m.cols; ++j) acc = f.add(acc, f.mul(m(i, j), x[static_cast<std::size_t>(j)]));
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(const Field& f, FieldMatrix& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols && row < a.rows; ++col) {
    int sel = -1;
    for (int r = row; r < a.rows; ++r)
      if (a(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < a.cols; ++j) std::swap(a(row, j), a(sel, j));
    Symbol s = f.inv(a(row, col));
    for (int j = 0; j < a.cols; ++j) a(row, j) = f.mul(a(row, j), s);
    for (int r = 0; r < a.rows; ++r) {
      if (r == row || a(r, col) == 0) continue;
      Symbol factor = a(r, col);
      for (int j = 0; j < a.cols; ++j) a(r, j) = f.sub(a(r, j), f.mul(factor, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

FieldMatrix null_space(const Field& f, const FieldMatrix& m) {
  FieldMatrix a = m;
  auto pivots = rref(f, a);
  std::vector<int> free_cols;
  for (int c = 0, pi = 0; c < a.cols; ++c) {
    if (pi < static_cast<int>(pivots.size()) && pivots[static_cast<std::size_t>(pi)] == c) ++pi;
    else free_cols.push_back(c);
  }
  FieldMatrix basis(static_cast<int>(free_cols.size()), a.cols);
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    int fc = free_cols[b];
    basis(static_cast<int>(b), fc) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(static_cast<int>(b), pivots[r]) = f.neg(a(static_cast<int>(r), fc));
  }
  return basis;
}

std::optional<FieldMatrix> inverse(const Field& f, const FieldMatrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  const int n = m.rows;
  FieldMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(f, aug);
  if (static_cast<int>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  FieldMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

ReedSolomon::ReedSolomon(Field field, int n, int k) : field_(std::move(field)), n_(n), k_(k) {
  if (k < 1 || k > n) throw Error(Errc::ParameterOutOfRange, "RS dimension out of range");
  if (static_cast<unsigned>(n) > field_.order())
    throw Error(Errc::FieldTooSmall, "RS length exceeds field size");
  generator_ = FieldMatrix(k, n);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i)
      generator_(j, i) = field_.pow(static_cast<Symbol>(i), static_cast<unsigned>(j));
  parity_ = null_space(field_, generator_);
  FieldMatrix head(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) head(r, c) = generator_(r, c);
  head_inverse_ = *inverse(field_, head);
}

Word ReedSolomon::encode(std::span<const Symbol> message) const {
  if (static_cast<int>(message.size()) != k_) throw Error(Errc::LengthMismatch, "RS message length");
  Word c(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    // Horner at point i.
    Symbol acc = 0;
    for (int j = k_ - 1; j >= 0; --j)
      acc = field_.add(field_.mul(acc, static_cast<Symbol>(i)), message[static_cast<std::size_t>(j)]);
    c[static_cast<std::size_t>(i)] = acc;
  }
  return c;
}

Word ReedSolomon::message_of(std::span<const Symbol> codeword) const {
  // c_head = m G_head, so m = c_head G_head^{-1}.
  Word m(static_cast<std::size_t>(k_), 0);
  for (int j = 0; j < k_; ++j) {
    Symbol acc = 0;
    for (int r = 0; r < k_; ++r)
      acc = field_.add(acc, field_.mul(codeword[static_cast<std::size_t>(r)], head_inverse_(r, j)));
    m[static_cast<std::size_t>(j)] = acc;
  }
  return m;
}

std::optional<Word> ReedSolomon::decode(std::span<const Symbol> received) const {
  auto space = word_space_size(field_.order(), static_cast<std::size_t>(k_));
  if (n_ <= 8 && space && *space <= 65536) return decode_exhaustive(received);
  return decode_berlekamp_welch(received);
}

std::optional<Word> ReedSolomon::decode_exhaustive(std::span<const Symbol> received) const {
  if (static_cast<int>(received.size()) != n_) throw Error(Errc::LengthMismatch, "RS received length");
  auto space = word_space_size(field_.order(), static_cast<std::size_t>(k_));
  if (!space || *space > (std::uint64_t{1} << 32)) throw Error(Errc::DomainTooLarge, "too many codewords");
  for (std::uint64_t idx = 0; idx < *space; ++idx) {
    Word m = word_at(idx, field_.order(), static_cast<std::size_t>(k_));
    if (hamming_distance(encode(m), received) <= radius()) return m;
  }
  return std::nullopt;
}

std::optional<Word> ReedSolomon::decode_berlekamp_welch(std::span<const Symbol> received) const {
  if (static_cast<int>(received.size()) != n_) throw Error(Errc::LengthMismatch, "RS received length");
  const int e = radius();
  // Unknowns: E_0..E_{e-1} (E monic of degree e), Q_0..Q_{e+k-1}.
  const int unknowns = e + (e + k_);
  FieldMatrix sys(n_, unknowns + 1);
  for (int i = 0; i < n_; ++i) {
    const Symbol x = static_cast<Symbol>(i);
    const Symbol y = received[static_cast<std::size_t>(i)];
    Symbol xp = 1;
    for (int j = 0; j < e; ++j) {
      sys(i, j) = field_.neg(field_.mul(y, xp));
      xp = field_.mul(xp, x);
    }
    sys(i, unknowns) = field_.mul(y, xp);  // y x^e moved to the right-hand side
    xp = 1;
    for (int j = 0; j < e + k_; ++j) {
      sys(i, e + j) = xp;
      xp = field_.mul(xp, x);
    }
  }
  auto pivots = rref(field_, sys);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;  // inconsistent
  std::vector<Symbol> sol(static_cast<std::size_t>(unknowns), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) sol[static_cast<std::size_t>(pivots[r])] = sys(static_cast<int>(r), unknowns);

  std::vector<Symbol> err_loc(static_cast<std::size_t>(e + 1), 0);
  for (int j = 0; j < e; ++j) err_loc[static_cast<std::size_t>(j)] = sol[static_cast<std::size_t>(j)];
  err_loc[static_cast<std::size_t>(e)] = 1;
  std::vector<Symbol> rem(sol.begin() + e, sol.end());
  // Long division rem / err_loc.
  std::vector<Symbol> quot(static_cast<std::size_t>(k_), 0);
  for (int deg = e + k_ - 1; deg >= e; --deg) {
    Symbol c = rem[static_cast<std::size_t>(deg)];
    if (c == 0) continue;
    quot[static_cast<std::size_t>(deg - e)] = c;
    for (int i = 0; i <= e; ++i)
      rem[static_cast<std::size_t>(deg - e + i)] =
          field_.sub(rem[static_cast<std::size_t>(deg - e + i)], field_.mul(c, err_loc[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < e; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  if (hamming_distance(encode(quot), received) > e) return std::nullopt;
  return quot;
}

SyndromeDecoder::SyndromeDecoder(const ReedSolomon& code, int radius) : code_(code), radius_(radius) {
  const int r = code_.parity_check().rows;
  if (!word_space_size(code_.field().order(), static_cast<std::size_t>(r)))
    throw Error(Errc::DomainTooLarge, "syndrome space does not fit 64 bits");
  const Field& f = code_.field();
  const FieldMatrix& h = code_.parity_check();
  for_each_sparse_word(code_.length(), radius, f.order(), true, [&](const Word& e, const std::vector<int>& support) {
    Word s(static_cast<std::size_t>(r), 0);
    for (int pos : support)
      for (int i = 0; i < r; ++i)
        s[static_cast<std::size_t>(i)] = f.add(s[static_cast<std::size_t>(i)], f.mul(h(i, pos), e[static_cast<std::size_t>(pos)]));
    auto [it, fresh] = table_.emplace(word_index(s, f.order()), e);
    if (!fresh) injective_ = false;
  });
}

std::uint64_t SyndromeDecoder::syndrome(std::span<const Symbol> received) const {
  return word_index(apply(code_.field(), code_.parity_check(), received), code_.field().order());
}

std::optional<Word> SyndromeDecoder::decode(std::span<const Symbol> received) const {
  if (static_cast<int>(received.size()) != code_.length()) throw Error(Errc::LengthMismatch, "received length");
  auto it = table_.find(syndrome(received));
  if (it == table_.end()) return std::nullopt;
  Word c(received.begin(), received.end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = code_.field().sub(c[i], it->second[i]);
  return code_.message_of(c);
}

}  // namespace advnet

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "advnet/word.hpp"

namespace advnet {

struct PrimePower {
  unsigned prime = 0;
  unsigned exponent = 0;
};
std::optional<PrimePower> prime_power(unsigned q);

// GF(q) for prime powers q <= 256. Elements are 0..q-1; for q = p^m an element is the
// base-p digit vector of a polynomial reduced modulo a fixed primitive polynomial.
class Field {
 public:
  explicit Field(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  // Reduction polynomial c_0..c_{m-1}, constant term first; the leading 1 is implied.
  const std::vector<unsigned>& modulus() const noexcept { return tables_->modulus; }

  Symbol add(Symbol a, Symbol b) const { return tables_->add[idx(a, b)]; }
  Symbol sub(Symbol a, Symbol b) const { return add(a, neg(b)); }
  Symbol neg(Symbol a) const { return tables_->neg[a]; }
  Symbol mul(Symbol a, Symbol b) const { return tables_->mul[idx(a, b)]; }
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  Symbol pow(Symbol a, unsigned e) const;

  friend bool operator==(const Field& x, const Field& y) { return x.q_ == y.q_; }

 private:
  struct Tables {
    std::vector<unsigned> modulus;
    std::vector<Symbol> add, mul, neg, inv;
  };
  std::size_t idx(Symbol a, Symbol b) const { return static_cast<std::size_t>(a) * q_ + b; }

  unsigned q_;
  unsigned p_;
  std::shared_ptr<const Tables> tables_;
};

struct FieldMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Symbol> data;

  FieldMatrix() = default;
  FieldMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0) {}
  Symbol& operator()(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  Symbol operator()(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;
};

// y = M x
Word apply(const Field& f, const FieldMatrix& m, std::span<const Symbol> x);
// Basis of { x : M x = 0 }, one vector per row.
FieldMatrix null_space(const Field& f, const FieldMatrix& m);
std::optional<FieldMatrix> inverse(const Field& f, const FieldMatrix& m);

// Evaluation-style Reed-Solomon code: message (m_0..m_{k-1}) is the polynomial
// sum m_j x^j evaluated at the first n field elements.
class ReedSolomon {
 public:
  ReedSolomon(Field field, int n, int k);

  const Field& field() const noexcept { return field_; }
  int length() const noexcept { return n_; }
  int dimension() const noexcept { return k_; }
  int distance() const noexcept { return n_ - k_ + 1; }
  int radius() const noexcept { return (n_ - k_) / 2; }

  Word encode(std::span<const Symbol> message) const;
  // Message of the codeword within the radius of `received`; nullopt when none is that close.
  std::optional<Word> decode(std::span<const Symbol> received) const;
  std::optional<Word> decode_exhaustive(std::span<const Symbol> received) const;
  std::optional<Word> decode_berlekamp_welch(std::span<const Symbol> received) const;
  Word message_of(std::span<const Symbol> codeword) const;

  // k x n generator (rows = encodings of unit messages) and (n-k) x n parity check.
  const FieldMatrix& generator() const noexcept { return generator_; }
  const FieldMatrix& parity_check() const noexcept { return parity_; }

 private:
  Field field_;
  int n_;
  int k_;
  FieldMatrix generator_;
  FieldMatrix parity_;
  FieldMatrix head_inverse_;  // inverse of the generator restricted to the first k columns
};

// Coset-leader table for every error of weight <= radius. When the table is injective the
// decoder returns the sent message for every such error.
class SyndromeDecoder {
 public:
  SyndromeDecoder(const ReedSolomon& code, int radius);

  const ReedSolomon& code() const noexcept { return code_; }
  int radius() const noexcept { return radius_; }
  bool injective() const noexcept { return injective_; }
  std::size_t leaders() const noexcept { return table_.size(); }

  std::uint64_t syndrome(std::span<const Symbol> received) const;
  // Message for received words whose syndrome has a leader; nullopt otherwise.
  std::optional<Word> decode(std::span<const Symbol> received) const;

 private:
  ReedSolomon code_;
  int radius_;
  bool injective_ = true;
  std::unordered_map<std::uint64_t, Word> table_;
};

}  // namespace advnet

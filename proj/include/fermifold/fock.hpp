#pragma once

// Occupation-number states over the four (lambda, mu) sectors and the
// modified creation/annihilation operators acting on them.
//
// Each sector carries its own sign string: a generator on mode r of sector s
// picks up (-1)^(occupied modes of s with serial < r). Occupations in other
// sectors never contribute, so generators of different sectors commute.

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermifold/errors.hpp"

namespace fermifold {

enum class Sector : std::uint8_t { s11 = 0, s12 = 1, s21 = 2, s22 = 3 };

inline constexpr std::array<Sector, 4> kSectors{Sector::s11, Sector::s12, Sector::s21, Sector::s22};
inline constexpr int kMaxModesPerSector = 64;

constexpr std::size_t index_of(Sector s) { return static_cast<std::size_t>(s); }

/// Two-digit code 11, 12, 21 or 22.
constexpr int sector_code(Sector s) {
  constexpr std::array<int, 4> codes{11, 12, 21, 22};
  return codes[index_of(s)];
}

constexpr int sector_lambda(Sector s) { return sector_code(s) / 10; }
constexpr int sector_mu(Sector s) { return sector_code(s) % 10; }

inline Sector sector_from_code(int code) {
  switch (code) {
    case 11: return Sector::s11;
    case 12: return Sector::s12;
    case 21: return Sector::s21;
    case 22: return Sector::s22;
    default: throw RangeError("unknown sector " + std::to_string(code) + " (expected 11|12|21|22)");
  }
}

/// Mode counts N, M, Q, T of sectors 11, 12, 21, 22.
struct SectorConfig {
  std::array<int, 4> modes{};

  int count(Sector s) const { return modes[index_of(s)]; }
  int total() const { return modes[0] + modes[1] + modes[2] + modes[3]; }

  /// Position of the first mode of `s` in the global (sector, serial) order.
  int offset(Sector s) const {
    int off = 0;
    for (std::size_t i = 0; i < index_of(s); ++i) off += modes[i];
    return off;
  }

  friend bool operator==(const SectorConfig&, const SectorConfig&) = default;
  friend auto operator<=>(const SectorConfig&, const SectorConfig&) = default;
};

inline SectorConfig make_config(int n11, int n12, int n21, int n22) {
  SectorConfig cfg{{n11, n12, n21, n22}};
  for (int n : cfg.modes) {
    if (n < 0 || n > kMaxModesPerSector) {
      throw RangeError("sector mode count " + std::to_string(n) + " outside 0.." +
                       std::to_string(kMaxModesPerSector));
    }
  }
  return cfg;
}

/// A sector and a 1-based serial r within it.
struct ModeIndex {
  Sector sector = Sector::s11;
  int serial = 1;

  friend constexpr auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

inline std::string to_string(const ModeIndex& m) {
  return "[" + std::to_string(sector_code(m.sector)) + "," + std::to_string(m.serial) + "]";
}

inline void check_mode(const SectorConfig& cfg, const ModeIndex& m) {
  if (m.serial < 1 || m.serial > cfg.count(m.sector)) {
    throw RangeError("mode " + to_string(m) + " outside sector with " +
                     std::to_string(cfg.count(m.sector)) + " modes");
  }
}

enum class Action : std::uint8_t { create, annihilate };

/// One creation (b+) or annihilation (b-) operator on a mode.
struct Generator {
  Action kind = Action::create;
  ModeIndex mode;

  friend constexpr auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator creator(Sector s, int serial) { return {Action::create, {s, serial}}; }
inline Generator annihilator(Sector s, int serial) { return {Action::annihilate, {s, serial}}; }

/// Base-ket flags plus one occupation bit string per sector (bit r-1 is mode r).
struct FockState {
  SectorConfig cfg;
  std::array<std::uint8_t, 4> base{};
  std::array<std::uint64_t, 4> occ{};

  int particles(Sector s) const { return std::popcount(occ[index_of(s)]); }
  int particles() const {
    int n = 0;
    for (auto bits : occ) n += std::popcount(bits);
    return n;
  }

  friend bool operator==(const FockState&, const FockState&) = default;
  friend auto operator<=>(const FockState&, const FockState&) = default;
};

inline std::uint64_t sector_mask(int count) {
  return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

inline FockState vacuum(const SectorConfig& cfg, std::array<std::uint8_t, 4> base = {}) {
  for (auto f : base) {
    if (f > 1) throw RangeError("base-ket flag must be 0 or 1");
  }
  return FockState{cfg, base, {}};
}

/// Occupation-number basis state; `occupied` lists the modes holding a particle.
inline FockState basis_state(const SectorConfig& cfg, std::span<const ModeIndex> occupied,
                             std::array<std::uint8_t, 4> base = {}) {
  FockState s = vacuum(cfg, base);
  for (const auto& m : occupied) {
    check_mode(cfg, m);
    s.occ[index_of(m.sector)] |= std::uint64_t{1} << (m.serial - 1);
  }
  return s;
}

inline FockState basis_state(const SectorConfig& cfg, std::initializer_list<ModeIndex> occupied,
                             std::array<std::uint8_t, 4> base = {}) {
  return basis_state(cfg, std::span<const ModeIndex>(occupied.begin(), occupied.size()), base);
}

inline int occupation(const FockState& s, const ModeIndex& m) {
  check_mode(s.cfg, m);
  return static_cast<int>((s.occ[index_of(m.sector)] >> (m.serial - 1)) & 1U);
}

/// (-1)^(occupied modes of m's sector with serial below m.serial).
inline int sign_string(const FockState& s, const ModeIndex& m) {
  check_mode(s.cfg, m);
  const std::uint64_t below = s.occ[index_of(m.sector)] & sector_mask(m.serial - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

struct PhasedState {
  int phase = 1;
  FockState state;
};

/// Empty when the mode is already occupied.
inline std::optional<PhasedState> create(const FockState& s, const ModeIndex& m) {
  if (occupation(s, m) == 1) return std::nullopt;
  PhasedState out{sign_string(s, m), s};
  out.state.occ[index_of(m.sector)] |= std::uint64_t{1} << (m.serial - 1);
  return out;
}

/// Empty when the mode is vacant.
inline std::optional<PhasedState> annihilate(const FockState& s, const ModeIndex& m) {
  if (occupation(s, m) == 0) return std::nullopt;
  PhasedState out{sign_string(s, m), s};
  out.state.occ[index_of(m.sector)] &= ~(std::uint64_t{1} << (m.serial - 1));
  return out;
}

inline std::optional<PhasedState> apply(const Generator& g, const FockState& s) {
  return g.kind == Action::create ? create(s, g.mode) : annihilate(s, g.mode);
}

/// Applies gens right to left; empty if any step vanishes.
inline std::optional<PhasedState> apply_string(std::span<const Generator> gens, const FockState& s) {
  PhasedState cur{1, s};
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
    auto next = apply(*it, cur.state);
    if (!next) return std::nullopt;
    cur.phase *= next->phase;
    cur.state = next->state;
  }
  return cur;
}

/// Kronecker delta over flags and occupations.
inline int inner_product(const FockState& a, const FockState& b) {
  if (a.cfg != b.cfg) throw ShapeError("inner product of states with different sector configs");
  return a.base == b.base && a.occ == b.occ ? 1 : 0;
}

/// Superposition of basis states with complex amplitudes; zero amplitudes are pruned.
class StateVector {
 public:
  using Amplitude = std::complex<double>;

  StateVector() = default;
  explicit StateVector(const SectorConfig& cfg) : cfg_(cfg) {}
  StateVector(const FockState& s, Amplitude amp = 1.0) : cfg_(s.cfg) { add(s, amp); }  // NOLINT

  const SectorConfig& config() const { return cfg_; }
  const std::map<FockState, Amplitude>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const FockState& s, Amplitude amp) {
    if (s.cfg != cfg_) throw ShapeError("state config does not match vector config");
    if (amp == Amplitude{}) return;
    auto [it, inserted] = terms_.try_emplace(s, amp);
    if (!inserted) {
      it->second += amp;
      if (it->second == Amplitude{}) terms_.erase(it);
    }
  }

  Amplitude amplitude(const FockState& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Amplitude{} : it->second;
  }

  double norm2() const {
    double n = 0.0;
    for (const auto& [s, a] : terms_) n += std::norm(a);
    return n;
  }

  StateVector& operator+=(const StateVector& o) {
    if (o.cfg_ != cfg_) throw ShapeError("adding state vectors with different configs");
    for (const auto& [s, a] : o.terms_) add(s, a);
    return *this;
  }

  StateVector& operator*=(Amplitude c) {
    if (c == Amplitude{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [s, a] : terms_) a *= c;
    return *this;
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  SectorConfig cfg_;
  std::map<FockState, Amplitude> terms_;
};

/// <a|b>, antilinear in a.
inline std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
  if (a.config() != b.config()) throw ShapeError("inner product of vectors with different configs");
  std::complex<double> acc{};
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [s, amp] : small.terms()) {
    auto other = large.amplitude(s);
    if (other == std::complex<double>{}) continue;
    acc += (&small == &a) ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return acc;
}

/// Applies a generator string (right to left) to every term of `ket`.
inline StateVector apply_string(std::span<const Generator> gens, const StateVector& ket) {
  StateVector out(ket.config());
  for (const auto& [s, amp] : ket.terms()) {
    if (auto r = apply_string(gens, s)) out.add(r->state, amp * static_cast<double>(r->phase));
  }
  return out;
}

/// <bra| g_1 ... g_n |ket>.
inline std::complex<double> operator_string_matrix_element(const StateVector& bra,
                                                           std::span<const Generator> gens,
                                                           const StateVector& ket) {
  if (bra.config() != ket.config()) throw ShapeError("bra and ket configs differ");
  for (const auto& g : gens) check_mode(ket.config(), g.mode);
  return inner_product(bra, apply_string(gens, ket));
}

inline std::complex<double> operator_string_matrix_element(const StateVector& bra,
                                                           std::initializer_list<Generator> gens,
                                                           const StateVector& ket) {
  return operator_string_matrix_element(bra, std::span<const Generator>(gens.begin(), gens.size()),
                                        ket);
}

/// The product state b+_{r_n} ... b+_{r_1} chi0 of each sector (r_1 < ... < r_n applied
/// lowest first), sectors stacked with 11 outermost, built by actually applying the
/// creation operators.
inline StateVector ordered_product_state(const FockState& target) {
  FockState cur = vacuum(target.cfg, target.base);
  int phase = 1;
  for (auto it = kSectors.rbegin(); it != kSectors.rend(); ++it) {
    const Sector s = *it;
    for (int r = 1; r <= target.cfg.count(s); ++r) {
      if (!((target.occ[index_of(s)] >> (r - 1)) & 1U)) continue;
      auto next = create(cur, {s, r});
      phase *= next->phase;
      cur = next->state;
    }
  }
  return StateVector(cur, static_cast<double>(phase));
}

/// Closed-form single-generator element between ordered product states:
/// creation on the k'-th occupied mode of the bra gives (-1)^(n'-k'), annihilation of
/// the k-th occupied mode of the ket gives (-1)^(n-k), with n counted in the acted sector;
/// everything else must agree, otherwise 0.
inline int regulated_set_element(const FockState& bra, const Generator& g, const FockState& ket) {
  if (bra.cfg != ket.cfg) throw ShapeError("bra and ket configs differ");
  check_mode(ket.cfg, g.mode);
  if (bra.base != ket.base) return 0;
  const std::size_t si = index_of(g.mode.sector);
  const std::uint64_t bit = std::uint64_t{1} << (g.mode.serial - 1);
  for (std::size_t i = 0; i < 4; ++i) {
    if (i != si && bra.occ[i] != ket.occ[i]) return 0;
  }
  if ((bra.occ[si] & ~bit) != (ket.occ[si] & ~bit)) return 0;
  const bool in_bra = (bra.occ[si] & bit) != 0;
  const bool in_ket = (ket.occ[si] & bit) != 0;
  const std::uint64_t below = sector_mask(g.mode.serial - 1);
  if (g.kind == Action::create) {
    if (in_ket || !in_bra) return 0;
    const int n_prime = std::popcount(bra.occ[si]);
    const int k_prime = std::popcount(bra.occ[si] & below) + 1;
    return ((n_prime - k_prime) & 1) ? -1 : 1;
  }
  if (!in_ket || in_bra) return 0;
  const int n = std::popcount(ket.occ[si]);
  const int k = std::popcount(ket.occ[si] & below) + 1;
  return ((n - k) & 1) ? -1 : 1;
}

/// Number of basis states 2^K over all modes.
inline std::size_t basis_size(const SectorConfig& cfg) { return std::size_t{1} << cfg.total(); }

/// Computational-basis position: modes ordered (sector, serial) with the first mode as the
/// most significant bit, matching a Kronecker product taken in the same order.
inline std::size_t basis_index(const FockState& s) {
  const int k = s.cfg.total();
  std::size_t idx = 0;
  for (Sector sec : kSectors) {
    const int off = s.cfg.offset(sec);
    for (int r = 1; r <= s.cfg.count(sec); ++r) {
      if ((s.occ[index_of(sec)] >> (r - 1)) & 1U) idx |= std::size_t{1} << (k - 1 - (off + r - 1));
    }
  }
  return idx;
}

inline FockState basis_state_at(const SectorConfig& cfg, std::size_t idx,
                                std::array<std::uint8_t, 4> base = {}) {
  const int k = cfg.total();
  if (k >= 63 || idx >= basis_size(cfg)) throw RangeError("basis index out of range");
  FockState s = vacuum(cfg, base);
  for (Sector sec : kSectors) {
    const int off = cfg.offset(sec);
    for (int r = 1; r <= cfg.count(sec); ++r) {
      if ((idx >> (k - 1 - (off + r - 1))) & 1U) s.occ[index_of(sec)] |= std::uint64_t{1} << (r - 1);
    }
  }
  return s;
}

/// Every mode of the config in (sector, serial) order.
inline std::vector<ModeIndex> all_modes(const SectorConfig& cfg) {
  std::vector<ModeIndex> out;
  for (Sector s : kSectors) {
    for (int r = 1; r <= cfg.count(s); ++r) out.push_back({s, r});
  }
  return out;
}

}  // namespace fermifold

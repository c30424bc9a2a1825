#pragma once

// Set families over a ground set [n] = {1,...,n}, n <= 64, as sorted vectors
// of bitmasks (bit i-1 set  <=>  element i present). Families are immutable
// values; every operation returns a new family.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "triwise/rational.hpp"

namespace triwise {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }

inline Mask full_mask(int n) {
  if (n < 0 || n > 64) throw std::domain_error("full_mask: n out of range");
  return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Single subset of [n].
struct Subset {
  Mask bits = 0;
  int n = 0;

  Subset() = default;
  Subset(Mask b, int n_) : bits(b), n(n_) {
    if (n_ < 1 || n_ > 64) throw std::domain_error("Subset: n out of range");
    if (b & ~full_mask(n_)) throw std::domain_error("Subset: bits exceed ground set");
  }
  static Subset of(std::initializer_list<int> elems, int n) {
    Mask b = 0;
    for (int e : elems) {
      if (e < 1 || e > n) throw std::domain_error("Subset: element out of range");
      b |= Mask{1} << (e - 1);
    }
    return Subset(b, n);
  }
  int size() const { return popcount(bits); }
  bool contains(int e) const { return (bits >> (e - 1)) & 1; }
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int e = 1; e <= n; ++e)
      if (contains(e)) out.push_back(e);
    return out;
  }
};

class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(int n, std::vector<Mask> members) : n_(n), members_(std::move(members)) {
    if (n_ < 1 || n_ > 64) throw std::domain_error("SetFamily: n out of range");
    Mask limit = full_mask(n_);
    for (Mask m : members_)
      if (m & ~limit) throw std::domain_error("SetFamily: member exceeds ground set");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  static SetFamily empty(int n) { return SetFamily(n, {}); }
  static SetFamily power_set(int n) {
    if (n > 20) throw std::domain_error("power_set: too large to materialize");
    std::vector<Mask> all(size_t(1) << n);
    std::iota(all.begin(), all.end(), Mask{0});
    return SetFamily(n, std::move(all));
  }

  int n() const { return n_; }
  const std::vector<Mask>& members() const { return members_; }
  size_t size() const { return members_.size(); }
  bool is_empty() const { return members_.empty(); }
  bool contains(Mask m) const {
    return std::binary_search(members_.begin(), members_.end(), m);
  }
  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
  }

  // counts[k] = number of members of size k; measures factor through this.
  std::vector<long> profile() const {
    std::vector<long> counts(n_ + 1, 0);
    for (Mask m : members_) ++counts[popcount(m)];
    return counts;
  }

  // Members with no proper subset in the family. Intersection predicates
  // only need these: any r members contain r minimal ones with a smaller
  // common intersection.
  std::vector<Mask> minimal_members() const {
    std::vector<Mask> mins;
    for (Mask m : members_) {
      bool minimal = true;
      for (int e = 0; e < n_ && minimal; ++e)
        if ((m >> e) & 1)
          if (contains(m & ~(Mask{1} << e))) minimal = false;
      if (minimal) mins.push_back(m);
    }
    return mins;
  }

 private:
  int n_ = 1;
  std::vector<Mask> members_;
};

// --- measures ---------------------------------------------------------------

inline Rat measure(const SetFamily& f, const Rat& p) {
  if (p <= 0 || p >= 1) throw std::domain_error("measure: p outside (0,1)");
  Rat q = 1 - p;
  auto counts = f.profile();
  Rat total(0);
  for (int k = 0; k <= f.n(); ++k)
    if (counts[k] != 0)
      total += Rat(counts[k]) * pow_rat(p, k) * pow_rat(q, f.n() - k);
  return total;
}

// Member-by-member sum; cross-checks the profile factorization in tests.
inline Rat measure_direct(const SetFamily& f, const Rat& p) {
  if (p <= 0 || p >= 1) throw std::domain_error("measure: p outside (0,1)");
  Rat q = 1 - p, total(0);
  for (Mask m : f.members()) total += pow_rat(p, popcount(m)) * pow_rat(q, f.n() - popcount(m));
  return total;
}

// --- shifting ---------------------------------------------------------------

inline SetFamily shift(const SetFamily& f, int i, int j) {
  if (!(1 <= i && i < j && j <= f.n()))
    throw std::domain_error("shift: need 1 <= i < j <= n");
  Mask bi = Mask{1} << (i - 1), bj = Mask{1} << (j - 1);
  std::vector<Mask> out;
  out.reserve(f.size());
  for (Mask m : f.members()) {
    if ((m & bj) && !(m & bi)) {
      Mask shifted = (m & ~bj) | bi;
      out.push_back(f.contains(shifted) ? m : shifted);
    } else {
      out.push_back(m);
    }
  }
  return SetFamily(f.n(), std::move(out));
}

inline bool is_shifted(const SetFamily& f) {
  for (int i = 1; i < f.n(); ++i)
    for (int j = i + 1; j <= f.n(); ++j)
      if (!(shift(f, i, j) == f)) return false;
  return true;
}

// Element-sum potential; strictly decreases under any applied shift.
inline long shift_potential(const SetFamily& f) {
  long total = 0;
  for (Mask m : f.members())
    for (int e = 1; e <= f.n(); ++e)
      if ((m >> (e - 1)) & 1) total += e;
  return total;
}

// Applies shifts in lexicographic (i,j) order, restarting after any change,
// until the family is shifted. Deterministic; terminates because the
// element-sum potential strictly decreases.
inline SetFamily shift_closure(const SetFamily& f) {
  SetFamily cur = f;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i < cur.n() && !changed; ++i)
      for (int j = i + 1; j <= cur.n() && !changed; ++j) {
        SetFamily next = shift(cur, i, j);
        if (!(next == cur)) {
          cur = std::move(next);
          changed = true;
        }
      }
  }
  return cur;
}

// G "shifts to" H: G is empty, or element-wise >= when both are listed in
// increasing order (and |G| <= |H|).
inline bool shifts_to(const Subset& g, const Subset& h) {
  if (g.n != h.n) throw std::domain_error("shifts_to: mismatched ground sets");
  if (g.bits == 0) return true;
  auto ge = g.elements(), he = h.elements();
  if (ge.size() > he.size()) return false;
  for (size_t i = 0; i < ge.size(); ++i)
    if (ge[i] < he[i]) return false;
  return true;
}

// --- intersection predicates ------------------------------------------------

namespace setfam_detail {

// All r-combinations with repetition from `items`, short-circuiting on the
// predicate returning false.
template <typename Fn>
bool for_each_multiset(const std::vector<Mask>& items, int r, Fn&& keep_going) {
  std::vector<size_t> idx(r, 0);
  std::vector<Mask> tuple(r);
  while (true) {
    for (int k = 0; k < r; ++k) tuple[k] = items[idx[k]];
    if (!keep_going(tuple)) return false;
    int k = r - 1;
    while (k >= 0 && idx[k] + 1 == items.size()) --k;
    if (k < 0) return true;
    size_t next = idx[k] + 1;
    for (int j = k; j < r; ++j) idx[j] = next;
  }
}

}  // namespace setfam_detail

// Every r members (repetition allowed) intersect in >= t elements.
inline bool is_rwise_t_intersecting(const SetFamily& f, int r, int t) {
  if (r < 2 || t < 1) throw std::domain_error("is_rwise_t_intersecting: need r >= 2, t >= 1");
  if (f.is_empty()) return true;
  auto mins = f.minimal_members();
  return setfam_detail::for_each_multiset(mins, r, [&](const std::vector<Mask>& tuple) {
    Mask common = ~Mask{0};
    for (Mask m : tuple) common &= m;
    return popcount(common & full_mask(f.n())) >= t;
  });
}

inline bool are_cross_t_intersecting(const std::vector<SetFamily>& fs, int t) {
  if (t < 1) throw std::domain_error("are_cross_t_intersecting: need t >= 1");
  if (fs.empty()) return true;
  int n = fs[0].n();
  std::vector<std::vector<Mask>> mins;
  for (const SetFamily& f : fs) {
    if (f.n() != n) throw std::domain_error("are_cross_t_intersecting: mismatched n");
    if (f.is_empty()) return true;  // empty product: vacuously true
    mins.push_back(f.minimal_members());
  }
  std::vector<size_t> idx(fs.size(), 0);
  while (true) {
    Mask common = full_mask(n);
    for (size_t k = 0; k < fs.size(); ++k) common &= mins[k][idx[k]];
    if (popcount(common) < t) return false;
    size_t k = fs.size();
    while (k > 0 && idx[k - 1] + 1 == mins[k - 1].size()) --k;
    if (k == 0) return true;
    ++idx[k - 1];
    for (size_t j = k; j < fs.size(); ++j) idx[j] = 0;
  }
}

inline Subset common_intersection(const SetFamily& f) {
  if (f.is_empty())
    throw std::domain_error("common_intersection: empty family (refusing the [n] convention)");
  Mask common = full_mask(f.n());
  for (Mask m : f.members()) common &= m;
  return Subset(common, f.n());
}

inline bool is_nontrivial(const SetFamily& f, int r, int t) {
  return is_rwise_t_intersecting(f, r, t) && common_intersection(f).size() < t;
}

// --- closure / isomorphism --------------------------------------------------

inline SetFamily upward_closure(const SetFamily& f) {
  if (f.n() > 25) throw std::domain_error("upward_closure: ground set too large");
  std::vector<Mask> out;
  Mask limit = full_mask(f.n());
  for (Mask m = 0; m <= limit; ++m)
    for (Mask g : f.members())
      if ((g & m) == g) {
        out.push_back(m);
        break;
      }
  return SetFamily(f.n(), std::move(out));
}

inline bool is_inclusion_maximal(const SetFamily& f) { return upward_closure(f) == f; }

inline SetFamily relabel(const SetFamily& f, const std::vector<int>& tau) {
  // tau is 0-based: element i+1 maps to tau[i]+1
  std::vector<Mask> out;
  out.reserve(f.size());
  for (Mask m : f.members()) {
    Mask r = 0;
    for (int e = 0; e < f.n(); ++e)
      if ((m >> e) & 1) r |= Mask{1} << tau[e];
    out.push_back(r);
  }
  return SetFamily(f.n(), std::move(out));
}

// Lexicographically least relabeling over all permutations of [n].
// Factorial scan; guarded to keep the cost sane.
inline SetFamily canonical_form(const SetFamily& f) {
  if (f.n() > 12) throw std::domain_error("canonical_form: n > 12 (factorial scan guard)");
  std::vector<int> tau(f.n());
  std::iota(tau.begin(), tau.end(), 0);
  std::optional<std::vector<Mask>> best;
  do {
    auto cand = relabel(f, tau).members();
    if (!best || cand < *best) best = std::move(cand);
  } while (std::next_permutation(tau.begin(), tau.end()));
  return SetFamily(f.n(), std::move(*best));
}

inline bool is_isomorphic(const SetFamily& f, const SetFamily& g) {
  if (f.n() != g.n() || f.size() != g.size()) return false;
  return canonical_form(f) == canonical_form(g);
}

// --- the [3]-decomposition --------------------------------------------------

// Splits f by the trace on [3]: for each I subset of [3] the family
// G_I = { F \ [3] : F in f, F cap [3] = I }, re-indexed to ground set
// of size n-3. Satisfies mu_p(f) = sum_I p^|I| q^(3-|I|) mu_p(G_I).
inline std::array<SetFamily, 8> decompose_FI(const SetFamily& f) {
  if (f.n() < 4) throw std::domain_error("decompose_FI: need n >= 4");
  std::array<std::vector<Mask>, 8> parts;
  for (Mask m : f.members()) parts[m & 7].push_back(m >> 3);
  std::array<SetFamily, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = SetFamily(f.n() - 3, std::move(parts[i]));
  return out;
}

// Index into decompose_FI output for I given as elements of {1,2,3}.
inline int trace_index(std::initializer_list<int> I) {
  int idx = 0;
  for (int e : I) {
    if (e < 1 || e > 3) throw std::domain_error("trace_index: element outside [3]");
    idx |= 1 << (e - 1);
  }
  return idx;
}

// tau = 7 - (|I1|+|I2|+|I3|) when the three traces have empty intersection;
// nothing otherwise.
inline std::optional<int> acceptable_tau(Mask I1, Mask I2, Mask I3) {
  if ((I1 | I2 | I3) & ~Mask{7}) throw std::domain_error("acceptable_tau: traces must lie in [3]");
  if (I1 & I2 & I3) return std::nullopt;
  return 7 - (popcount(I1) + popcount(I2) + popcount(I3));
}

// --- text format ------------------------------------------------------------

// First line "n=<int>"; each further line one subset as comma-separated
// ascending elements, the empty set written "{}".
inline void write_family(std::ostream& os, const SetFamily& f) {
  os << "n=" << f.n() << "\n";
  for (Mask m : f.members()) {
    if (m == 0) {
      os << "{}\n";
      continue;
    }
    bool first = true;
    for (int e = 1; e <= f.n(); ++e)
      if ((m >> (e - 1)) & 1) {
        if (!first) os << ",";
        os << e;
        first = false;
      }
    os << "\n";
  }
}

inline SetFamily read_family(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("n=", 0) != 0)
    throw std::runtime_error("family format: expected first line 'n=<int>'");
  int n = std::stoi(line.substr(2));
  std::vector<Mask> members;
  size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line == "{}") {
      members.push_back(0);
      continue;
    }
    Mask m = 0;
    std::stringstream ss(line);
    std::string tok;
    int prev = 0;
    while (std::getline(ss, tok, ',')) {
      int e = std::stoi(tok);
      if (e < 1 || e > n)
        throw std::runtime_error("family format: element out of range at line " +
                                 std::to_string(lineno));
      if (e <= prev)
        throw std::runtime_error("family format: elements must ascend at line " +
                                 std::to_string(lineno));
      prev = e;
      m |= Mask{1} << (e - 1);
    }
    members.push_back(m);
  }
  return SetFamily(n, std::move(members));
}

inline std::string family_to_string(const SetFamily& f) {
  std::ostringstream os;
  write_family(os, f);
  return os.str();
}

inline SetFamily family_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_family(is);
}

}  // namespace triwise

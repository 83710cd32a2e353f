#pragma once

// Partitions, permutations of S_m, the hyperoctahedral subgroup H_k of S_{2k},
// the matching representatives M_{2k} of S_{2k}/H_k, and double-coset
// reduction H_k \ S_{2k} / H_k.
//
// Permutations are 0-based internally. Text and JSON use 1-based one-line
// images ("3,1,2,4,6,5").

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wgcalc {

namespace detail {

inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    auto b = token.find_first_not_of(" \t");
    auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty list entry in '" + std::string(text) + "'");
    token = token.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + token + "'");
    }
    if (used != token.size()) throw std::invalid_argument("not an integer: '" + token + "'");
    out.push_back(v);
  }
  return out;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Partition

class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  // Sorts and drops zero parts.
  static Partition from_unsorted(std::vector<int> parts) {
    std::erase(parts, 0);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
  }

  static Partition ones(int k) { return Partition(std::vector<int>(static_cast<std::size_t>(k), 1)); }

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  int even_parts() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p % 2 == 0; }));
  }
  int odd_parts() const { return length() - even_parts(); }

  // mu = 2 nu for some partition nu.
  bool is_even() const { return even_parts() == length(); }

  Partition conjugate() const {
    std::vector<int> out;
    if (!parts_.empty()) {
      out.resize(static_cast<std::size_t>(parts_.front()), 0);
      for (int p : parts_)
        for (int j = 0; j < p; ++j) ++out[static_cast<std::size_t>(j)];
    }
    return Partition(std::move(out));
  }

  // 2λ = (2λ_1, 2λ_2, ...)
  Partition doubled() const {
    std::vector<int> out(parts_);
    for (int& p : out) p *= 2;
    return Partition(std::move(out));
  }

  // λ∪λ = (λ_1, λ_1, λ_2, λ_2, ...)
  Partition self_union() const {
    std::vector<int> out;
    out.reserve(parts_.size() * 2);
    for (int p : parts_) {
      out.push_back(p);
      out.push_back(p);
    }
    return Partition(std::move(out));
  }

  // Multiplicity of part size i, for i = 1..max part.
  std::vector<int> multiplicities() const {
    std::vector<int> m(parts_.empty() ? 1 : static_cast<std::size_t>(parts_.front()) + 1, 0);
    for (int p : parts_) ++m[static_cast<std::size_t>(p)];
    return m;
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

inline std::string to_string(const Partition& p) { return detail::join_ints(p.parts()); }

inline Partition parse_partition(std::string_view text) {
  return Partition(detail::parse_int_list(text));
}

// All partitions of k in reverse lexicographic order: (k), (k-1,1), ..., (1^k).
inline std::vector<Partition> partitions_of(int k) {
  if (k < 0) throw std::invalid_argument("negative partition weight");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

// ---------------------------------------------------------------------------
// Permutation

class Permutation {
 public:
  Permutation() = default;

  // 0-based one-line images.
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("images do not form a permutation");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  static Permutation identity(int m) {
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v), Unchecked{});
  }

  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<int> v(images);
    for (int& x : v) --x;
    return Permutation(std::move(v));
  }

  // (i j), 0-based.
  static Permutation transposition(int m, int i, int j) {
    auto p = identity(m);
    std::swap(p.images_[static_cast<std::size_t>(i)], p.images_[static_cast<std::size_t>(j)]);
    return p;
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  std::vector<int> one_based() const {
    std::vector<int> v(images_);
    for (int& x : v) ++x;
    return v;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv), Unchecked{});
  }

  int cycle_count() const {
    std::vector<char> seen(images_.size(), 0);
    int cycles = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) seen[j] = 1;
    }
    return cycles;
  }

  int signature() const { return (size() - cycle_count()) % 2 == 0 ? 1 : -1; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  // (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("composing permutations of different degree");
    std::vector<int> v(b.images_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.images_[static_cast<std::size_t>(b.images_[i])];
    return Permutation(std::move(v), Unchecked{});
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}

  std::vector<int> images_;
};

inline Permutation compose(const Permutation& a, const Permutation& b) { return a * b; }

inline std::string to_string(const Permutation& p) { return detail::join_ints(p.one_based()); }

inline Permutation parse_permutation(std::string_view text) {
  return Permutation::from_one_based(detail::parse_int_list(text));
}

// Lehmer-code rank in [0, m!).
inline std::size_t permutation_rank(const Permutation& p) {
  const int m = p.size();
  std::size_t rank = 0;
  for (int i = 0; i < m; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < m; ++j)
      if (p(j) < p(i)) ++smaller;
    rank = rank * static_cast<std::size_t>(m - i) + static_cast<std::size_t>(smaller);
  }
  return rank;
}

inline Permutation permutation_unrank(int m, std::size_t rank) {
  std::vector<int> digits(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    const auto base = static_cast<std::size_t>(m - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> images;
  images.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto it = pool.begin() + digits[static_cast<std::size_t>(i)];
    images.push_back(*it);
    pool.erase(it);
  }
  return Permutation(std::move(images));
}

// Visits all of S_m in lexicographic one-line order.
template <class F>
void for_each_permutation(int m, F&& f) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  do {
    f(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

// ---------------------------------------------------------------------------
// Cycle-type and coset-type

inline Partition cycle_type(const Permutation& p) {
  std::vector<char> seen(static_cast<std::size_t>(p.size()), 0);
  std::vector<int> lengths;
  for (int i = 0; i < p.size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = p(j)) {
      seen[static_cast<std::size_t>(j)] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition::from_unsorted(std::move(lengths));
}

namespace detail {

struct UnionFind {
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
  }
  std::vector<int> parent;
  std::vector<int> size;
};

inline void require_even_degree(const Permutation& p) {
  if (p.size() % 2 != 0) throw std::invalid_argument("permutation of odd degree has no coset-type");
}

}  // namespace detail

// Halved component sizes of the graph with red edges {2r-1,2r} and blue edges
// {p(2r-1), p(2r)}.
inline Partition coset_type(const Permutation& p) {
  detail::require_even_degree(p);
  const int m = p.size();
  detail::UnionFind uf(m);
  for (int r = 0; r < m; r += 2) {
    uf.unite(r, r + 1);
    uf.unite(p(r), p(r + 1));
  }
  std::vector<int> halves;
  for (int v = 0; v < m; ++v)
    if (uf.find(v) == v) halves.push_back(uf.size[static_cast<std::size_t>(v)] / 2);
  return Partition::from_unsorted(std::move(halves));
}

// Canonical representative of coset-type mu: each block of size 2*mu_r is
// 1 -> 1, 2 -> 2mu_r, p -> p-1 (p >= 3), shifted by the previous blocks.
inline Permutation sigma_mu(const Partition& mu) {
  std::vector<int> images;
  int offset = 0;
  for (int part : mu.parts()) {
    images.push_back(offset);
    images.push_back(offset + 2 * part - 1);
    for (int p = 3; p <= 2 * part; ++p) images.push_back(offset + p - 2);
    offset += 2 * part;
  }
  return Permutation(std::move(images));
}

// ---------------------------------------------------------------------------
// Hyperoctahedral group and matchings

inline bool is_in_hyperoctahedral(const Permutation& p) {
  detail::require_even_degree(p);
  for (int r = 0; r < p.size(); r += 2)
    if (p(r) / 2 != p(r + 1) / 2) return false;
  return true;
}

// All 2^k k! elements of H_k. Order: pair permutations lexicographic, then flip
// masks ascending.
inline std::vector<Permutation> hyperoctahedral_elements(int k) {
  if (k < 0) throw std::invalid_argument("negative k");
  std::vector<Permutation> out;
  std::vector<int> pi(static_cast<std::size_t>(k));
  std::iota(pi.begin(), pi.end(), 0);
  do {
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> images(static_cast<std::size_t>(2 * k));
      for (int i = 0; i < k; ++i) {
        const int flip = static_cast<int>((mask >> i) & 1u);
        images[static_cast<std::size_t>(2 * i)] = 2 * pi[static_cast<std::size_t>(i)] + flip;
        images[static_cast<std::size_t>(2 * i + 1)] = 2 * pi[static_cast<std::size_t>(i)] + 1 - flip;
      }
      out.emplace_back(std::move(images));
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

inline constexpr int kDefaultMatchingCap = 6;

inline std::uint64_t double_factorial_odd(int k) {
  std::uint64_t out = 1;
  for (int i = 2 * k - 1; i > 1; i -= 2) out *= static_cast<std::uint64_t>(i);
  return out;
}

// Permutation in M_{2k} for a perfect matching given as pairs (0-based). Pairs
// are normalized: each pair sorted, pairs sorted by smaller element.
inline Permutation matching_permutation(std::vector<std::pair<int, int>> pairs) {
  for (auto& pr : pairs)
    if (pr.first > pr.second) std::swap(pr.first, pr.second);
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> images;
  images.reserve(pairs.size() * 2);
  for (const auto& [a, b] : pairs) {
    images.push_back(a);
    images.push_back(b);
  }
  return Permutation(std::move(images));
}

// M_{2k} in lexicographic order of the partner sequence (σ(2), σ(4), ...).
inline std::vector<Permutation> enumerate_matchings(int k, int cap = kDefaultMatchingCap) {
  if (k < 0) throw std::invalid_argument("negative k");
  if (k > cap) throw std::out_of_range("k=" + std::to_string(k) + " exceeds matching enumeration cap " + std::to_string(cap));
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(double_factorial_odd(k)));
  const int m = 2 * k;
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  std::vector<int> images;
  auto rec = [&](auto&& self) -> void {
    int first = 0;
    while (first < m && used[static_cast<std::size_t>(first)]) ++first;
    if (first == m) {
      out.emplace_back(images);
      return;
    }
    used[static_cast<std::size_t>(first)] = 1;
    for (int partner = first + 1; partner < m; ++partner) {
      if (used[static_cast<std::size_t>(partner)]) continue;
      used[static_cast<std::size_t>(partner)] = 1;
      images.push_back(first);
      images.push_back(partner);
      self(self);
      images.resize(images.size() - 2);
      used[static_cast<std::size_t>(partner)] = 0;
    }
    used[static_cast<std::size_t>(first)] = 0;
  };
  rec(rec);
  return out;
}

// ---------------------------------------------------------------------------
// Double cosets

struct DoubleCosetReduction {
  Partition mu;
  int left_sign = 1;   // ε(ζ)
  int right_sign = 1;  // ε(ζ')
  Permutation left;    // ζ ∈ H_k
  Permutation right;   // ζ' ∈ H_k, with p = ζ σ_μ ζ'
};

// Constructive factorization p = ζ σ_μ ζ'. Each component of the red/blue graph
// is walked as an alternating cycle starting from its smallest vertex along the
// red edge, and ζ sends the matching block of σ_μ onto that walk. Components are
// taken by decreasing size, ties by smallest vertex, so σ_μ reduces with ζ = ζ' = id.
//
// The signs are canonical only where the twisted functions need them: for even μ
// every factorization yields the same ε(ζ) (and ε(ζ')); ε(ζ)ε(ζ') = ε(p) always.
inline DoubleCosetReduction double_coset_reduce(const Permutation& p) {
  detail::require_even_degree(p);
  const int m = p.size();
  const Permutation pinv = p.inverse();
  auto blue_partner = [&](int v) { return p(pinv(v) ^ 1); };

  detail::UnionFind uf(m);
  for (int r = 0; r < m; r += 2) {
    uf.unite(r, r + 1);
    uf.unite(p(r), p(r + 1));
  }
  struct Component {
    int size;
    int min_vertex;
  };
  std::vector<Component> comps;
  std::vector<int> min_of(static_cast<std::size_t>(m), -1);
  for (int v = 0; v < m; ++v) {
    const int root = uf.find(v);
    if (min_of[static_cast<std::size_t>(root)] < 0) {
      min_of[static_cast<std::size_t>(root)] = v;
      comps.push_back({uf.size[static_cast<std::size_t>(root)], v});
    }
  }
  std::stable_sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) { return a.size > b.size; });

  std::vector<int> zeta(static_cast<std::size_t>(m));
  std::vector<int> halves;
  int offset = 0;
  for (const auto& c : comps) {
    int v = c.min_vertex;
    for (int i = 0; i < c.size; ++i) {
      zeta[static_cast<std::size_t>(offset + i)] = v;
      v = (i % 2 == 0) ? (v ^ 1) : blue_partner(v);
    }
    halves.push_back(c.size / 2);
    offset += c.size;
  }

  DoubleCosetReduction out;
  out.mu = Partition(halves);
  out.left = Permutation(std::move(zeta));
  out.right = sigma_mu(out.mu).inverse() * out.left.inverse() * p;
  out.left_sign = out.left.signature();
  out.right_sign = out.right.signature();
  return out;
}

}  // namespace wgcalc

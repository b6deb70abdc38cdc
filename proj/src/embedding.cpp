#include "peval/embedding.hpp"

#include <charconv>
#include <stdexcept>
#include <unordered_map>

namespace peval {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept {
    auto a = reinterpret_cast<std::uintptr_t>(p.first);
    auto b = reinterpret_cast<std::uintptr_t>(p.second);
    return std::hash<std::uintptr_t>{}(a * 31 + b);
  }
};

class Embedder {
 public:
  explicit Embedder(bool memo) : memo_(memo) {}

  bool embeds(const Term& s, const Term& t) {
    if (s.size() > t.size() || s.depth() > t.depth()) return false;
    if (!s.ground() && t.ground()) return false;
    if (s.is_var()) return t.is_var() || dive_var(t);
    if (!memo_) return compute(s, t);
    auto key = std::make_pair(s.node_id(), t.node_id());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    bool r = compute(s, t);
    cache_.emplace(key, r);
    return r;
  }

 private:
  // A variable embeds t iff some variable occurs in t.
  static bool dive_var(const Term& t) { return !t.ground(); }

  bool compute(const Term& s, const Term& t) {
    if (t.is_var()) return false;
    if (s.kind() == t.kind() && couple(s, t)) return true;
    for (const Term& ti : t.args())
      if (embeds(s, ti)) return true;
    return false;
  }

  bool couple(const Term& s, const Term& t) {
    if (s.is_int()) return s.int_value() == t.int_value();
    if (s.arity() != t.arity() || s.name() != t.name()) return false;
    for (std::size_t i = 0; i < s.arity(); ++i)
      if (!embeds(s.arg(i), t.arg(i))) return false;
    return true;
  }

  bool memo_;
  std::unordered_map<std::pair<const void*, const void*>, bool, PairHash> cache_;
};

constexpr std::size_t kMemoThreshold = 4096;

}  // namespace

bool embeds_term(const Term& s, const Term& t) {
  return Embedder(s.size() * t.size() > kMemoThreshold).embeds(s, t);
}

bool embeds_atom(const Atom& a, const Atom& b) {
  if (!comparable(a, b)) return false;
  return embeds_term(a.term(), b.term());
}

bool DepthBoundWqo::leq(const Atom& earlier, const Atom& later) const {
  return later.term().depth() > k_ || variant(earlier, later);
}

std::shared_ptr<const Wqo> make_wqo(std::string_view spec) {
  if (spec == "hembed") return std::make_shared<HEmbedWqo>();
  if (spec == "none") return std::make_shared<NoneWqo>();
  if (spec == "fullseq-hembed") return std::make_shared<FullSeqHEmbedWqo>();
  if (spec.starts_with("depth:")) {
    std::string_view digits = spec.substr(6);
    std::size_t k = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && p == digits.data() + digits.size() && !digits.empty())
      return std::make_shared<DepthBoundWqo>(k);
  }
  throw std::invalid_argument("unknown wqo '" + std::string(spec) +
                              "' (expected hembed, none, depth:<k> or fullseq-hembed)");
}

bool admissible(const Atom& a, std::span<const Atom> ancestors, const Wqo& w) {
  for (const Atom& b : ancestors)
    if (comparable(a, b) && w.leq(b, a)) return false;
  return true;
}

}  // namespace peval

#include "dponline/hypothesis.hpp"

#include <algorithm>
#include <stdexcept>

namespace dponline {

Hypothesis Hypothesis::all_zero() { return Hypothesis(Repr{AllZeroTag{}}); }
Hypothesis Hypothesis::all_one() { return Hypothesis(Repr{AllOneTag{}}); }

Hypothesis Hypothesis::point(DomainPoint target) {
  if (target < 1) throw std::invalid_argument("point hypothesis: target must be >= 1");
  return Hypothesis(Repr{PointTag{target}});
}

Hypothesis Hypothesis::threshold(std::uint64_t cut) {
  return Hypothesis(Repr{ThresholdTag{cut}});
}

Hypothesis Hypothesis::table(std::vector<bool> bits) {
  if (bits.empty()) throw std::invalid_argument("table hypothesis: empty table");
  return Hypothesis(Repr{TableTag{std::move(bits)}});
}

Hypothesis Hypothesis::complement(Hypothesis inner) {
  return Hypothesis(Repr{ComplementTag{std::make_shared<const Hypothesis>(std::move(inner))}});
}

Hypothesis Hypothesis::lazy_random(std::uint64_t denom, std::uint64_t seed) {
  if (denom < 1) throw std::invalid_argument("lazy_random hypothesis: rate denominator must be >= 1");
  auto state = std::make_shared<LazyRandomState>();
  state->denom = denom;
  state->seed = seed;
  return Hypothesis(Repr{LazyRandomTag{std::move(state)}});
}

bool Hypothesis::operator()(DomainPoint x) const {
  if (x < 1) throw std::invalid_argument("hypothesis evaluated at x < 1");
  struct Visitor {
    DomainPoint x;
    bool operator()(const AllZeroTag&) const { return false; }
    bool operator()(const AllOneTag&) const { return true; }
    bool operator()(const PointTag& t) const { return x == t.target; }
    bool operator()(const ThresholdTag& t) const { return x > t.cut; }
    bool operator()(const TableTag& t) const {
      if (x > t.bits.size())
        throw std::domain_error("table hypothesis evaluated outside its domain");
      return t.bits[x - 1];
    }
    bool operator()(const ComplementTag& t) const { return !(*t.inner)(x); }
    bool operator()(const LazyRandomTag& t) const {
      auto it = t.state->memo.find(x);
      if (it != t.state->memo.end()) return it->second;
      // Per-point coin from the counter-based stream evaluated at counter = x.
      const std::uint64_t u = mix64(t.state->seed + x * 0x9E3779B97F4A7C15ULL);
      const bool bit =
          t.state->denom == 1 || u < (~std::uint64_t{0} / t.state->denom) + 1;
      t.state->memo.emplace(x, bit);
      return bit;
    }
  };
  return std::visit(Visitor{x}, repr_);
}

Hypothesis::Kind Hypothesis::kind() const {
  struct Visitor {
    Kind operator()(const AllZeroTag&) const { return Kind::AllZero; }
    Kind operator()(const AllOneTag&) const { return Kind::AllOne; }
    Kind operator()(const PointTag&) const { return Kind::Point; }
    Kind operator()(const ThresholdTag&) const { return Kind::Threshold; }
    Kind operator()(const TableTag&) const { return Kind::Table; }
    Kind operator()(const ComplementTag&) const { return Kind::Complement; }
    Kind operator()(const LazyRandomTag&) const { return Kind::LazyRandom; }
  };
  return std::visit(Visitor{}, repr_);
}

std::string Hypothesis::describe() const {
  struct Visitor {
    std::string operator()(const AllZeroTag&) const { return "all-zero"; }
    std::string operator()(const AllOneTag&) const { return "all-one"; }
    std::string operator()(const PointTag& t) const {
      return "point:" + std::to_string(t.target);
    }
    std::string operator()(const ThresholdTag& t) const {
      return "threshold:" + std::to_string(t.cut);
    }
    std::string operator()(const TableTag& t) const {
      std::string s = "table:";
      for (bool b : t.bits) s += b ? '1' : '0';
      return s;
    }
    std::string operator()(const ComplementTag& t) const {
      return "complement(" + t.inner->describe() + ")";
    }
    std::string operator()(const LazyRandomTag& t) const {
      return "lazy-random:denom=" + std::to_string(t.state->denom) +
             ",seed=" + std::to_string(t.state->seed);
    }
  };
  return std::visit(Visitor{}, repr_);
}

DomainPoint Hypothesis::point_target() const {
  if (const auto* p = std::get_if<PointTag>(&repr_)) return p->target;
  throw std::logic_error("point_target on non-point hypothesis");
}

std::uint64_t Hypothesis::threshold_cut() const {
  if (const auto* p = std::get_if<ThresholdTag>(&repr_)) return p->cut;
  throw std::logic_error("threshold_cut on non-threshold hypothesis");
}

const Hypothesis& Hypothesis::inner() const {
  if (const auto* p = std::get_if<ComplementTag>(&repr_)) return *p->inner;
  throw std::logic_error("inner on non-complement hypothesis");
}

std::uint64_t Hypothesis::table_size() const {
  if (const auto* p = std::get_if<TableTag>(&repr_)) return p->bits.size();
  throw std::logic_error("table_size on non-table hypothesis");
}

bool evaluate(const Hypothesis& h, DomainPoint x) { return h(x); }

bool equal_on_domain(const Hypothesis& a, const Hypothesis& b,
                     const std::vector<DomainPoint>& domain) {
  for (DomainPoint x : domain) {
    if (a(x) != b(x)) return false;
  }
  return true;
}

FiniteClass make_class(std::vector<Hypothesis> hypotheses,
                       std::optional<std::vector<DomainPoint>> domain) {
  if (hypotheses.empty()) throw std::invalid_argument("class must be non-empty");
  if (domain) {
    if (domain->empty()) throw std::invalid_argument("explicit domain must be non-empty");
    for (DomainPoint x : *domain) {
      if (x < 1) throw std::invalid_argument("domain points must be >= 1");
    }
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
      for (std::size_t j = i + 1; j < hypotheses.size(); ++j) {
        if (equal_on_domain(hypotheses[i], hypotheses[j], *domain))
          throw std::invalid_argument("duplicate hypotheses in class");
      }
    }
  }
  return FiniteClass{std::move(hypotheses), std::move(domain)};
}

FiniteClass make_point_class(std::uint64_t d) {
  if (d < 1) throw std::invalid_argument("make_point_class: d must be >= 1");
  std::vector<Hypothesis> hs;
  std::vector<DomainPoint> dom;
  hs.reserve(d);
  dom.reserve(d);
  for (std::uint64_t i = 1; i <= d; ++i) {
    hs.push_back(Hypothesis::point(i));
    dom.push_back(i);
  }
  return FiniteClass{std::move(hs), std::move(dom)};
}

FiniteClass make_threshold_class(std::uint64_t d) {
  if (d < 1) throw std::invalid_argument("make_threshold_class: d must be >= 1");
  std::vector<Hypothesis> hs;
  std::vector<DomainPoint> dom;
  hs.reserve(d + 1);
  dom.reserve(d);
  for (std::uint64_t i = 0; i <= d; ++i) hs.push_back(Hypothesis::threshold(i));
  for (std::uint64_t i = 1; i <= d; ++i) dom.push_back(i);
  return FiniteClass{std::move(hs), std::move(dom)};
}

Hypothesis sample_point_representation(std::uint64_t T, NoiseSource& rng) {
  if (T < 1) throw std::invalid_argument("sample_point_representation: T must be >= 1");
  return Hypothesis::lazy_random(T, rng.next_u64());
}

std::optional<NonComplementaryPair> find_non_complementary_pair(const FiniteClass& cls) {
  if (!cls.domain) throw std::invalid_argument("find_non_complementary_pair: explicit domain required");
  const auto& dom = *cls.domain;
  for (std::size_t i = 0; i < cls.hypotheses.size(); ++i) {
    for (std::size_t j = i + 1; j < cls.hypotheses.size(); ++j) {
      std::optional<DomainPoint> u0, u1;
      for (DomainPoint x : dom) {
        if (cls.hypotheses[i](x) == cls.hypotheses[j](x)) {
          if (!u0) u0 = x;
        } else if (!u1) {
          u1 = x;
        }
        if (u0 && u1) break;
      }
      if (u0 && u1) return NonComplementaryPair{i, j, *u0, *u1};
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> is_realizable(const std::vector<LabeledExample>& stream,
                                         const FiniteClass& cls) {
  for (std::size_t i = 0; i < cls.hypotheses.size(); ++i) {
    bool ok = true;
    for (const auto& ex : stream) {
      if (cls.hypotheses[i](ex.x) != ex.y) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return std::nullopt;
}

PointRealizability is_realizable_point_over_n(const std::vector<LabeledExample>& stream) {
  std::optional<DomainPoint> one_label;
  for (const auto& ex : stream) {
    if (!ex.y) continue;
    if (one_label && *one_label != ex.x) return PointRealizability{false, std::nullopt};
    one_label = ex.x;
  }
  if (one_label) {
    for (const auto& ex : stream) {
      if (!ex.y && ex.x == *one_label) return PointRealizability{false, std::nullopt};
    }
    return PointRealizability{true, one_label};
  }
  // All labels 0: any point outside the stream works.
  DomainPoint fresh = 1;
  for (const auto& ex : stream) fresh = std::max(fresh, ex.x + 1);
  return PointRealizability{true, fresh};
}

namespace {

std::uint64_t parse_d_field(const std::string& body, const char* what) {
  if (body.rfind("d=", 0) != 0)
    throw std::invalid_argument(std::string("class descriptor: expected d=<n> in ") + what);
  const std::string digits = body.substr(2);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(std::string("class descriptor: bad d value in ") + what);
  return std::stoull(digits);
}

}  // namespace

FiniteClass parse_class(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  if (head == "point") return make_point_class(parse_d_field(body, "point"));
  if (head == "threshold") return make_threshold_class(parse_d_field(body, "threshold"));
  if (head == "pair") {
    if (body != "complementary")
      throw std::invalid_argument("class descriptor: unknown pair variant " + body);
    return FiniteClass{{Hypothesis::all_one(), Hypothesis::all_zero()}, std::nullopt};
  }
  if (head == "table") {
    std::vector<Hypothesis> hs;
    std::size_t width = 0;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto comma = body.find(',', pos);
      const std::string word =
          body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (word.empty() || word.find_first_not_of("01") != std::string::npos)
        throw std::invalid_argument("class descriptor: bad table row " + word);
      if (width == 0) width = word.size();
      if (word.size() != width)
        throw std::invalid_argument("class descriptor: table rows of unequal width");
      std::vector<bool> bits;
      bits.reserve(word.size());
      for (char c : word) bits.push_back(c == '1');
      hs.push_back(Hypothesis::table(std::move(bits)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    std::vector<DomainPoint> dom;
    for (std::size_t i = 1; i <= width; ++i) dom.push_back(i);
    return make_class(std::move(hs), std::move(dom));
  }
  throw std::invalid_argument("unknown class descriptor: " + descriptor);
}

}  // namespace dponline

#pragma once

// Finite approximations of continuous functionals on Baire space.
//
// A PrefixMap lists input prefixes with committed output prefixes. An entry
// may continue its output past the committed part: with the input's own
// continuation (CopyInput) or with zeros. Applying a map to a point uses the
// longest entry whose input is a prefix of the point.
//
//   psi_nonextendable   sends 0^n 1 X to 0^n 1 X (n even) and to 1 0^(n-1) X
//                       (n odd), undefined elsewhere. Any total continuous
//                       extension would send 0^w to a sequence starting with
//                       both 0 and 1.
//   diagonalize_total   against a total f, keeps g undefined until f commits
//                       to (fg)(0) = v, then makes g total with first symbol
//                       v + 1 everywhere, so (g(fg))(0) != (fg)(0).

#include "pcalab/natural.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pcalab {

using Seq = std::vector<std::uint64_t>;

inline bool is_prefix(const Seq& a, const Seq& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline bool comparable(const Seq& a, const Seq& b) { return is_prefix(a, b) || is_prefix(b, a); }

inline std::string seq_string(const Seq& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

// A point of Baire space with a finite description: a prefix, then zeros or
// a repeated nonempty pattern.
class BairePoint {
 public:
  struct Zeros {};
  struct Cyclic {
    Seq pattern;
  };
  using Tail = std::variant<Zeros, Cyclic>;

  explicit BairePoint(Seq prefix, Tail tail = Zeros{}) : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    if (auto* c = std::get_if<Cyclic>(&tail_); c && c->pattern.empty()) {
      throw std::invalid_argument("BairePoint: empty cyclic pattern");
    }
  }

  static BairePoint zeros() { return BairePoint({}); }
  // 0^n 1 0^w
  static BairePoint zeros_one(std::size_t n) {
    Seq p(n, 0);
    p.push_back(1);
    return BairePoint(std::move(p));
  }

  std::uint64_t at(std::size_t k) const {
    if (k < prefix_.size()) return prefix_[k];
    if (const auto* c = std::get_if<Cyclic>(&tail_)) return c->pattern[(k - prefix_.size()) % c->pattern.size()];
    return 0;
  }

  Seq prefix_at(std::size_t k) const {
    Seq out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = at(i);
    return out;
  }

  const Seq& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }

 private:
  Seq prefix_;
  Tail tail_;
};

enum class TailRule : std::uint8_t { None, CopyInput, Zeros };

struct PrefixEntry {
  Seq input;
  Seq output;
  TailRule tail = TailRule::None;

  // The output this entry commits to on the given extension of its input,
  // up to `len` symbols (fewer when the entry commits to less).
  Seq output_on(const Seq& extension, std::size_t len) const {
    Seq out(output.begin(), output.begin() + static_cast<std::ptrdiff_t>(std::min(len, output.size())));
    for (std::size_t k = input.size(); out.size() < len; ++k) {
      if (tail == TailRule::None) break;
      if (tail == TailRule::Zeros) {
        out.push_back(0);
      } else if (k < extension.size()) {
        out.push_back(extension[k]);
      } else {
        break;
      }
    }
    return out;
  }
};

class PrefixMapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PrefixMap {
 public:
  PrefixMap() = default;

  // Rejects inputs longer than depth, duplicate inputs, and entries below
  // one another that are not monotone (see conflict()).
  PrefixMap(std::vector<PrefixEntry> entries, std::size_t depth) : entries_(std::move(entries)), depth_(depth) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& a = entries_[i];
      if (a.input.size() > depth_) {
        throw PrefixMapError("PrefixMap: input [" + seq_string(a.input) + "] longer than depth " +
                             std::to_string(depth_));
      }
      for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (i == j) continue;
        const auto& b = entries_[j];
        if (a.input == b.input && i < j) {
          throw PrefixMapError("PrefixMap: duplicate input [" + seq_string(a.input) + "]");
        }
        if (a.input.size() >= b.input.size() || !is_prefix(a.input, b.input)) continue;
        if (auto why = conflict(a, b)) throw PrefixMapError("PrefixMap: " + *why);
      }
    }
  }

  static PrefixMap empty(std::size_t depth = 0) { return PrefixMap({}, depth); }

  // Every input of length `depth` maps to itself; the tail copies on.
  static PrefixMap identity(std::size_t depth) { return PrefixMap({{{}, {}, TailRule::CopyInput}}, depth); }

  // The total map sending everything to (v, 0, 0, ...).
  static PrefixMap constant_first(std::uint64_t v, std::size_t depth = 0) {
    return PrefixMap({{{}, {v}, TailRule::Zeros}}, depth);
  }

  const std::vector<PrefixEntry>& entries() const { return entries_; }
  std::size_t depth() const { return depth_; }

  // The longest entry whose input is a prefix of the point.
  const PrefixEntry* entry_for(const BairePoint& b) const {
    const PrefixEntry* best = nullptr;
    for (const auto& e : entries_) {
      if (is_prefix(e.input, b.prefix_at(e.input.size())) && (!best || e.input.size() > best->input.size())) {
        best = &e;
      }
    }
    return best;
  }

  // Line format, '#' starts a comment: `<input> -> <output> [copy|zeros]`,
  // sequences as space separated naturals. An optional first line
  // `depth <n>` sets the depth; otherwise it is the longest input.
  static PrefixMap parse(std::istream& in) {
    std::vector<PrefixEntry> entries;
    std::optional<std::size_t> depth;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
      throw PrefixMapError("line " + std::to_string(lineno) + ": " + what);
    };
    auto parse_seq = [&](const std::string& text) {
      Seq s;
      std::istringstream words(text);
      for (std::string w; words >> w;) {
        try {
          std::size_t used = 0;
          unsigned long long v = std::stoull(w, &used);
          if (used != w.size()) fail("not a natural: '" + w + "'");
          s.push_back(v);
        } catch (const std::logic_error&) {
          fail("not a natural: '" + w + "'");
        }
      }
      return s;
    };
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto arrow = line.find("->");
      if (arrow == std::string::npos) {
        std::istringstream words(line);
        std::string key, value, extra;
        words >> key >> value;
        if (key != "depth" || value.empty() || (words >> extra)) fail("expected '<input> -> <output>' or 'depth <n>'");
        Seq d = parse_seq(value);
        depth = static_cast<std::size_t>(d.at(0));
        continue;
      }
      PrefixEntry e;
      e.input = parse_seq(line.substr(0, arrow));
      std::string rhs = line.substr(arrow + 2);
      std::istringstream words(rhs);
      std::string body;
      for (std::string w; words >> w;) {
        if (w == "copy") {
          e.tail = TailRule::CopyInput;
        } else if (w == "zeros") {
          e.tail = TailRule::Zeros;
        } else {
          if (e.tail != TailRule::None) fail("tail rule must come last");
          body += w + ' ';
        }
      }
      e.output = parse_seq(body);
      entries.push_back(std::move(e));
    }
    std::size_t d = 0;
    for (const auto& e : entries) d = std::max(d, e.input.size());
    return PrefixMap(std::move(entries), depth.value_or(d));
  }

  static PrefixMap parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  std::string to_text() const {
    std::string out = "depth " + std::to_string(depth_) + "\n";
    for (const auto& e : entries_) {
      out += seq_string(e.input) + " -> " + seq_string(e.output);
      if (e.tail == TailRule::CopyInput) out += " copy";
      if (e.tail == TailRule::Zeros) out += " zeros";
      out += '\n';
    }
    return out;
  }

 private:
  // a.input is a proper prefix of b.input. What a commits to within b's
  // input must be a prefix of b's output, and on every continuation the two
  // outputs must be comparable. Two continuations suffice: zeros, and one of
  // distinct symbols that exposes shifted copies.
  static std::optional<std::string> conflict(const PrefixEntry& a, const PrefixEntry& b) {
    std::size_t span = b.input.size() - a.input.size();
    Seq within = a.output_on(b.input, a.output.size() + (a.tail == TailRule::None ? 0 : span));
    bool ok = is_prefix(within, b.output);
    std::size_t len = std::max(a.output.size() + span, b.output.size()) + b.input.size() + 2;
    for (int variant = 0; ok && variant < 2; ++variant) {
      Seq beta = b.input;
      for (std::size_t i = 0; beta.size() < b.input.size() + 2 * len; ++i) beta.push_back(variant == 0 ? 0 : i + 1);
      Seq x = a.output_on(beta, len);
      Seq y = b.output_on(beta, len);
      std::size_t common = std::min(x.size(), y.size());
      ok = std::equal(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(common), y.begin());
    }
    if (ok) return std::nullopt;
    return "inputs [" + seq_string(a.input) + "] and [" + seq_string(b.input) + "] commit to incompatible outputs [" +
           seq_string(a.output) + "] and [" + seq_string(b.output) + "]";
  }

  std::vector<PrefixEntry> entries_;
  std::size_t depth_ = 0;
};

// The first out_len symbols of F(beta), if F commits to that many.
inline std::optional<Seq> apply_functional(const PrefixMap& f, const BairePoint& beta, std::size_t out_len) {
  if (out_len == 0) throw std::invalid_argument("apply_functional: out_len must be at least 1");
  const PrefixEntry* e = f.entry_for(beta);
  if (!e) return std::nullopt;
  std::size_t need = e->input.size() + out_len;
  Seq out = e->output_on(beta.prefix_at(need), out_len);
  if (out.size() < out_len) return std::nullopt;
  return out;
}

// 0^n 1 X |-> 0^n 1 X for even n, 1 0^(n-1) X for odd n, n + 1 <= depth.
inline PrefixMap psi_nonextendable(std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("psi_nonextendable: depth must be at least 2");
  std::vector<PrefixEntry> entries;
  for (std::size_t n = 0; n + 1 <= depth; ++n) {
    Seq in(n, 0);
    in.push_back(1);
    Seq out;
    if (n % 2 == 0) {
      out = in;
    } else {
      out.assign(n, 0);
      out[0] = 1;
    }
    entries.push_back({std::move(in), std::move(out), TailRule::CopyInput});
  }
  return PrefixMap(std::move(entries), depth);
}

// A point of dom psi close to 0^w and the first symbol psi forces there.
struct ForcedSymbol {
  std::size_t zeros = 0;  // the point is 0^zeros 1 0^w
  std::uint64_t symbol = 0;
};

// A candidate value for f(0^w)(0), decided from the prefix 0^k, and the
// point of dom psi that refutes it.
struct CandidateRefutation {
  std::size_t k = 0;
  std::uint64_t symbol = 0;
  std::optional<ForcedSymbol> refuted_by;  // absent: not refutable at this depth
};

struct ContradictionWitness {
  ForcedSymbol forces_zero;
  ForcedSymbol forces_one;
  std::vector<CandidateRefutation> candidates;
};

struct NotFound {
  std::string reason;
};

using ExtensionCheck = std::variant<ContradictionWitness, NotFound>;

// Searches the points 0^n 1 0^w (n >= 1, n + 1 <= depth) for two that psi
// sends to sequences with first symbols 0 and 1. Both agree with 0^w on a
// nonempty prefix of zeros, so a total continuous extension cannot decide
// its first symbol at 0^w before seeing past them. Every candidate (k, a)
// with k <= depth - 2 is refuted by a point with at least k zeros.
inline ExtensionCheck check_no_total_extension(const PrefixMap& psi, std::size_t depth) {
  if (depth < 3) return NotFound{"depth " + std::to_string(depth) + " is below 3"};
  if (apply_functional(psi, BairePoint::zeros(), 1)) return NotFound{"psi is already defined at 0^w"};
  std::vector<ForcedSymbol> forced;
  for (std::size_t n = 1; n + 1 <= depth; ++n) {
    if (auto out = apply_functional(psi, BairePoint::zeros_one(n), 1)) forced.push_back({n, (*out)[0]});
  }
  std::optional<ForcedSymbol> zero, one;
  for (const auto& f : forced) {
    if (f.symbol == 0 && !zero) zero = f;
    if (f.symbol == 1 && !one) one = f;
  }
  if (!zero || !one) return NotFound{"no pair of points near 0^w forces both 0 and 1"};
  ContradictionWitness w{*zero, *one, {}};
  for (std::size_t k = 0; k < depth; ++k) {
    for (std::uint64_t a : {0ULL, 1ULL}) {
      CandidateRefutation c{k, a, std::nullopt};
      for (const auto& f : forced) {
        if (f.zeros >= k && f.symbol != a) {
          c.refuted_by = f;
          break;
        }
      }
      w.candidates.push_back(c);
    }
  }
  return w;
}

// Adds the commitment 0^k |-> a to psi. A total extension must make some
// such commitment; the result is the reason it fails, or nothing.
inline std::optional<std::string> refute_candidate(const PrefixMap& psi, std::size_t k, std::uint64_t a) {
  auto entries = psi.entries();
  entries.push_back({Seq(k, 0), {a}, TailRule::None});
  try {
    PrefixMap(std::move(entries), std::max(psi.depth(), k));
  } catch (const PrefixMapError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

// A functional on functionals, seen through finite approximations of its
// argument: given what is known of g so far and the probe step, it returns
// the first symbol of fg once it commits to one.
using FunctionalProbe = std::function<std::optional<std::uint64_t>(const PrefixMap& g_so_far, std::uint64_t step)>;

struct Diagonalization {
  PrefixMap g;
  std::uint64_t fg_first = 0;        // (fg)(0)
  std::uint64_t committed_at = 0;    // probe step
  std::uint64_t g_of_fg_first = 0;   // (g(fg))(0)
};

struct NonCommittal {
  std::uint64_t probe_depth = 0;
};

using DiagonalizationResult = std::variant<Diagonalization, NonCommittal>;

// g stays totally undefined while f is probed; once f commits to v, g
// becomes the total map with first symbol v + 1 and zeros after. f used
// nothing of g, so fg still starts with v.
inline DiagonalizationResult diagonalize_total(const FunctionalProbe& f, std::uint64_t probe_depth) {
  const PrefixMap undefined = PrefixMap::empty();
  for (std::uint64_t step = 0; step < probe_depth; ++step) {
    if (auto v = f(undefined, step)) {
      PrefixMap g = PrefixMap::constant_first(*v + 1);
      BairePoint fg(Seq{*v});
      std::uint64_t g_fg = (*apply_functional(g, fg, 1))[0];
      return Diagonalization{std::move(g), *v, step, g_fg};
    }
  }
  return NonCommittal{probe_depth};
}

namespace functionals {

// Commits to v at probe step `at`, whatever g is.
inline FunctionalProbe constant(std::uint64_t v, std::uint64_t at = 0) {
  return [v, at](const PrefixMap&, std::uint64_t step) -> std::optional<std::uint64_t> {
    if (step >= at) return v;
    return std::nullopt;
  };
}

// fg = g: commits only once g commits at 0^w.
inline FunctionalProbe identity() {
  return [](const PrefixMap& g, std::uint64_t) -> std::optional<std::uint64_t> {
    if (auto out = apply_functional(g, BairePoint::zeros(), 1)) return (*out)[0];
    return std::nullopt;
  };
}

}  // namespace functionals

}  // namespace pcalab

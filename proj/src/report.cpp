#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "wlspec/errors.hpp"
#include "wlspec/fixtures.hpp"
#include "wlspec/graph6.hpp"
#include "wlspec/matrix_map.hpp"
#include "wlspec/report.hpp"
#include "wlspec/spectral.hpp"
#include "wlspec/tplus.hpp"
#include "wlspec/wlkd.hpp"

namespace wlspec {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw ArgumentError("expected an integer for " + std::string(what) + ", got '" + std::string(text) + "'");
  return v;
}

Depth parse_depth(std::string_view text) {
  if (text == "inf") return Depth::infinite();
  int v = parse_int(text, "d");
  if (v < 0) throw ArgumentError("d must be non-negative");
  return Depth::rounds(v);
}

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

struct Relation {
  enum class Kind { Wl1, Wl11, Wlk, Cospectral, Fuerer, Commute, HomTplus, WordSoe, PseudoStochastic };
  Relation(Kind kind, int k = 0, Depth d = Depth::infinite(), int bound = 0, std::string map = {})
      : kind(kind), k(k), d(d), bound(bound), map(std::move(map)) {}

  Kind kind;
  int k;
  Depth d;
  int bound;
  std::string map;

  std::string name() const {
    switch (kind) {
      case Kind::Wl1: return "wl1";
      case Kind::Wl11: return "wl11";
      case Kind::Wlk: return "wlk(" + std::to_string(k) + "," + d.to_string() + ")";
      case Kind::Cospectral: return "cospectral(" + map + ")";
      case Kind::Fuerer: return "fuerer";
      case Kind::Commute: return "commute";
      case Kind::HomTplus: return "homTplus(" + std::to_string(bound) + ")";
      case Kind::WordSoe: return "wordSoe(" + std::to_string(k) + "," + d.to_string() + "," + std::to_string(bound) + ")";
      case Kind::PseudoStochastic: return "pseudoStochastic(" + std::to_string(k) + "," + d.to_string() + ")";
    }
    return {};
  }
};

// Parses one requested test; bare names take their parameters from config.
std::vector<Relation> parse_request(const std::string& raw, const CompareConfig& cfg) {
  using K = Relation::Kind;
  std::string head = raw, inner;
  bool has_args = false;
  if (auto open = raw.find('('); open != std::string::npos) {
    if (raw.back() != ')') throw ArgumentError("unbalanced parentheses in test '" + raw + "'");
    head = raw.substr(0, open);
    inner = raw.substr(open + 1, raw.size() - open - 2);
    has_args = true;
  }
  auto args = split_top_level(inner);
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw ArgumentError("test '" + raw + "' takes " + std::to_string(n) + " argument(s)");
  };
  auto check_k = [&](int k) {
    if (k < 1) throw ArgumentError("k must be at least 1 in '" + raw + "'");
    return k;
  };

  if (head == "all" && !has_args) {
    std::vector<Relation> out = {{K::Wl1}, {K::Wl11}, {K::Wlk, cfg.k, cfg.d}};
    for (const auto& id : MatrixMapId::integer_maps()) out.push_back({K::Cospectral, 0, Depth::infinite(), 0, id.name()});
    out.push_back({K::Fuerer});
    out.push_back({K::Commute});
    out.push_back({K::HomTplus, 0, Depth::infinite(), cfg.pattern_bound});
    out.push_back({K::WordSoe, cfg.k, cfg.d, cfg.word_bound});
    out.push_back({K::PseudoStochastic, cfg.k, cfg.d});
    return out;
  }
  if ((head == "wl1" || head == "wl11" || head == "fuerer" || head == "commute" || head == "wl2") && has_args)
    throw ArgumentError("test '" + head + "' takes no arguments");
  if (head == "wl1") return {{K::Wl1}};
  if (head == "wl11") return {{K::Wl11}};
  if (head == "fuerer") return {{K::Fuerer}};
  if (head == "commute") return {{K::Commute}};
  if (head == "wl2") return {{K::Wlk, 2, Depth::infinite()}};
  if (head == "wlk") {
    if (!has_args) return {{K::Wlk, check_k(cfg.k), cfg.d}};
    want(2);
    return {{K::Wlk, check_k(parse_int(args[0], "k")), parse_depth(args[1])}};
  }
  if (head == "cospectral") {
    std::string map = has_args ? MatrixMapId::parse(inner).name() : MatrixMapId::adjacency().name();
    return {{K::Cospectral, 0, Depth::infinite(), 0, map}};
  }
  if (head == "homTplus") {
    if (!has_args) return {{K::HomTplus, 0, Depth::infinite(), cfg.pattern_bound}};
    want(1);
    return {{K::HomTplus, 0, Depth::infinite(), parse_int(args[0], "pattern bound")}};
  }
  if (head == "wordSoe") {
    if (!has_args) return {{K::WordSoe, check_k(cfg.k), cfg.d, cfg.word_bound}};
    want(3);
    return {{K::WordSoe, check_k(parse_int(args[0], "k")), parse_depth(args[1]), parse_int(args[2], "word bound")}};
  }
  if (head == "pseudoStochastic") {
    if (!has_args) return {{K::PseudoStochastic, check_k(cfg.k), cfg.d}};
    want(2);
    return {{K::PseudoStochastic, check_k(parse_int(args[0], "k")), parse_depth(args[1])}};
  }
  throw ArgumentError("unknown test '" + raw + "'");
}

Relation parse_canonical(const std::string& name) { return parse_request(name, CompareConfig{}).front(); }

json colour_witness(const WlVerdict& v) {
  json w = {{"iterations", v.iterations_used}};
  if (v.witness) {
    w["colour"] = v.witness->colour;
    w["countG"] = v.witness->count_g;
    w["countH"] = v.witness->count_h;
  }
  return w;
}

json number(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

json spectrum_json(const SpectrumSummary& s) {
  json out = json::array();
  for (const auto& e : s.eigenvalues) out.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
  return out;
}

RelationResult evaluate(const Relation& rel, const Graph& g, const Graph& h, const CompareConfig& cfg) {
  using K = Relation::Kind;
  RelationResult r;
  r.relation = rel.name();
  auto set = [&](bool equal) { r.verdict = equal ? Verdict::Equal : Verdict::Distinguished; };
  SpectralOptions sopts;
  if (cfg.tolerance) sopts.eigen_tolerance = *cfg.tolerance;

  switch (rel.kind) {
    case K::Wl1: {
      auto v = wl1_indistinguishable(g, h);
      set(v.indistinguishable);
      r.witness = colour_witness(v);
      break;
    }
    case K::Wl11: {
      auto v = wl11_indistinguishable(g, h);
      set(v.indistinguishable);
      r.witness = colour_witness(v);
      break;
    }
    case K::Wlk: {
      auto v = wlk_indistinguishable(g, h, rel.k, rel.d);
      set(v.indistinguishable);
      r.witness = colour_witness(v);
      break;
    }
    case K::Cospectral: {
      auto id = MatrixMapId::parse(rel.map);
      auto sg = spectrum(id, g, sopts), sh = spectrum(id, h, sopts);
      set(cospectral(id, g, h, sopts));
      if (r.verdict == Verdict::Distinguished) {
        if (sg.characteristic_polynomial && sh.characteristic_polynomial) {
          r.witness = {{"charpolyG", polynomial_to_string(*sg.characteristic_polynomial)},
                       {"charpolyH", polynomial_to_string(*sh.characteristic_polynomial)}};
        } else {
          r.witness = {{"spectrumG", spectrum_json(sg)}, {"spectrumH", spectrum_json(sh)}};
        }
      }
      break;
    }
    case K::Fuerer: {
      auto fg = fuerer_invariant(g, sopts), fh = fuerer_invariant(h, sopts);
      set(fg == fh);
      if (r.verdict == Verdict::Distinguished) {
        std::string part = fg.eigenvalues != fh.eigenvalues         ? "eigenvalues"
                           : fg.multiplicities != fh.multiplicities ? "multiplicities"
                                                                     : "vertexProfiles";
        r.witness = {{"differsIn", part}};
      }
      break;
    }
    case K::Commute: {
      double tol = cfg.tolerance.value_or(1e-8);
      set(commute_multiset_equal(g, h, tol));
      if (r.verdict == Verdict::Distinguished) {
        auto mg = commute_multiset(g), mh = commute_multiset(h);
        if (mg.size() != mh.size()) {
          r.witness = {{"sizeG", mg.size()}, {"sizeH", mh.size()}};
        } else {
          for (std::size_t i = 0; i < mg.size(); ++i) {
            bool same = std::isinf(mg[i]) || std::isinf(mh[i])
                            ? mg[i] == mh[i]
                            : std::abs(mg[i] - mh[i]) <= tol * std::max(1.0, std::abs(mg[i]));
            if (!same) {
              r.witness = {{"index", i}, {"valueG", number(mg[i])}, {"valueH", number(mh[i])}};
              break;
            }
          }
        }
      }
      break;
    }
    case K::HomTplus: {
      auto v = hom_indist_tplus(g, h, rel.bound);
      r.verdict = v.distinguished ? Verdict::Distinguished : Verdict::EqualUpToBound;
      r.witness = {{"patternsChecked", v.patterns_checked}};
      if (v.witness) {
        r.witness["pattern"] = serialize_graph6(v.witness->pattern);
        r.witness["forest"] = serialize_graph6(v.witness->forest);
        r.witness["contracted"] = v.witness->contracted;
        r.witness["homG"] = v.hom_g;
        r.witness["homH"] = v.hom_h;
      }
      break;
    }
    case K::WordSoe: {
      if (rel.d.is_infinite()) {
        r.reason = "the word test needs a finite iteration count d";
        break;
      }
      WordSoeOptions opts;
      opts.max_length = rel.bound;
      auto v = word_soe_test(g, h, rel.k, rel.d.value(), opts);
      r.verdict = v.witness_found ? Verdict::Distinguished : Verdict::EqualUpToBound;
      r.witness = {{"wordsChecked", v.words_checked}, {"alphabetSize", v.alphabet_size}};
      if (v.witness_found) {
        json word = json::array();
        for (const auto& l : v.word) word.push_back(l.generator.to_string() + (l.starred ? "*" : ""));
        r.witness["word"] = word;
        r.witness["soeG"] = v.soe_g;
        r.witness["soeH"] = v.soe_h;
      }
      break;
    }
    case K::PseudoStochastic: {
      if (rel.d.is_infinite()) {
        r.reason = "the pseudo-stochastic system needs a finite iteration count d";
        break;
      }
      auto v = pseudo_stochastic_feasible(g, h, rel.k, rel.d.value());
      set(v.feasible);
      r.witness = {{"variables", v.variables}, {"equations", v.equations}, {"rank", v.rank}};
      if (v.x) {
        r.witness["rows"] = v.x->rows();
        r.witness["cols"] = v.x->cols();
        if (static_cast<long>(v.x->rows()) * v.x->cols() <= 4096) {
          json rows = json::array();
          for (int i = 0; i < v.x->rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < v.x->cols(); ++j) row.push_back((*v.x)(i, j).get_str());
            rows.push_back(row);
          }
          r.witness["x"] = rows;
        } else {
          r.witness["xOmitted"] = true;
        }
      }
      break;
    }
  }
  return r;
}

bool depth_leq(const Depth& a, const Depth& b) {
  if (b.is_infinite()) return true;
  return !a.is_infinite() && a.value() <= b.value();
}

// Does an equal verdict on p force q not to be distinguished?
bool implies(const Relation& p, const Relation& q) {
  using K = Relation::Kind;
  bool wl2_or_stronger = p.kind == K::Wlk && p.k >= 2 && p.d.is_infinite();
  bool wl11_or_stronger = p.kind == K::Wl11 || wl2_or_stronger;
  bool wl1_or_stronger = wl11_or_stronger || p.kind == K::Wl1 || (p.kind == K::Wlk && p.d.is_infinite());
  switch (q.kind) {
    case K::Wl1:
      return wl1_or_stronger;
    case K::Wl11:
      return wl2_or_stronger;
    case K::Wlk:
      if (p.kind == K::Wlk || p.kind == K::PseudoStochastic) {
        if (p.k == q.k && p.d == q.d) return true;
        return p.kind == K::Wlk && q.k <= p.k && depth_leq(q.d, p.d);
      }
      return q.k == 1 && wl1_or_stronger;
    case K::Cospectral:
      return wl11_or_stronger || (p.kind == K::Fuerer && q.map == MatrixMapId::adjacency().name());
    case K::Fuerer:
    case K::HomTplus:
      return wl11_or_stronger;
    case K::Commute:
      // Equal (1,1)-WL colours do not force equal commute multisets; the
      // gadget pair is a counterexample.
      return wl2_or_stronger;
    case K::WordSoe:
    case K::PseudoStochastic:
      return (p.kind == K::Wlk || p.kind == K::PseudoStochastic) && p.k == q.k && p.d == q.d;
  }
  return false;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::Distinguished: return "distinguished";
    case Verdict::EqualUpToBound: return "equalUpToBound";
    case Verdict::Skipped: return "skipped";
  }
  return {};
}

GraphInput load_graph(const std::string& source, const std::string& format) {
  if (source.rfind("fixture:", 0) == 0) return {source, fixture(source.substr(8))};
  if (!format.empty() && format != "graph6" && format != "edgelist")
    throw ArgumentError("unknown format '" + format + "' (expected graph6 or edgelist)");
  std::string text = read_file(source);
  bool g6 = format == "graph6" || (format.empty() && (ends_with(source, ".g6") || text.rfind(">>graph6<<", 0) == 0));
  try {
    return {source, g6 ? parse_graph6(text) : parse_edge_list(text)};
  } catch (const ParseError& e) {
    throw ParseError(e.offset(), source + ": " + e.what());
  }
}

std::vector<std::string> split_test_list(std::string_view text) { return split_top_level(text); }

std::vector<std::string> default_tests() {
  return {"wl1", "wl11", "cospectral(adjacency)", "cospectral(laplacian)", "commute"};
}

std::vector<std::string> expand_tests(const CompareConfig& config) {
  std::vector<std::string> raw = config.tests.empty() ? default_tests() : config.tests;
  std::vector<std::string> out;
  for (const auto& t : raw)
    for (const auto& rel : parse_request(t, config)) {
      std::string name = rel.name();
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  if (out.empty()) throw ArgumentError("no tests requested");
  return out;
}

RelationResult evaluate_relation(const std::string& relation, const Graph& g, const Graph& h,
                                 const CompareConfig& config) {
  Relation rel = parse_canonical(relation);
  try {
    return evaluate(rel, g, h, config);
  } catch (const SizeError& e) {
    return {rel.name(), Verdict::Skipped, std::string("size cap: ") + e.what(), {}};
  } catch (const NumericError& e) {
    return {rel.name(), Verdict::Skipped, std::string("numeric failure: ") + e.what(), {}};
  }
}

std::vector<std::string> lattice_contradictions(const std::vector<RelationResult>& relations) {
  std::vector<std::string> out;
  for (const auto& p : relations) {
    if (p.verdict != Verdict::Equal) continue;
    Relation rp = parse_canonical(p.relation);
    for (const auto& q : relations) {
      if (&p == &q || q.verdict != Verdict::Distinguished) continue;
      if (implies(rp, parse_canonical(q.relation)))
        out.push_back("CONTRADICTION: " + p.relation + " equal but " + q.relation + " distinguished");
    }
  }
  return out;
}

CertificateReport run_compare(const GraphInput& a, const GraphInput& b, const CompareConfig& config) {
  CertificateReport rep;
  rep.inputs = {a, b};
  rep.config = config;
  rep.tests = expand_tests(config);
  for (const auto& t : rep.tests) rep.relations.push_back(evaluate_relation(t, a.graph, b.graph, config));
  rep.contradictions = lattice_contradictions(rep.relations);
  return rep;
}

int CertificateReport::exit_code() const {
  for (const auto& r : relations)
    if (r.verdict == Verdict::Distinguished) return 1;
  return 0;
}

json CertificateReport::to_json() const {
  json inputs_json = json::array();
  for (const auto& in : inputs)
    inputs_json.push_back({{"id", in.id}, {"vertices", in.graph.order()}, {"edges", in.graph.edge_count()}});
  json cfg = {{"tests", tests},
              {"k", config.k},
              {"d", config.d.to_string()},
              {"wordBound", config.word_bound},
              {"patternBound", config.pattern_bound},
              {"tolerance", config.tolerance ? json(*config.tolerance) : json(nullptr)}};
  json rels = json::array();
  for (const auto& r : relations) {
    json item = {{"relation", r.relation}, {"verdict", to_string(r.verdict)}};
    if (r.verdict == Verdict::Skipped) item["reason"] = r.reason;
    if (!r.witness.is_null()) item["witness"] = r.witness;
    rels.push_back(item);
  }
  return {{"schemaVersion", kReportSchemaVersion},
          {"tool", {{"name", "wlspec"}, {"version", kToolVersion}}},
          {"inputs", inputs_json},
          {"config", cfg},
          {"relations", rels},
          {"lattice", {{"consistent", contradictions.empty()}, {"contradictions", contradictions}}},
          {"exitCode", exit_code()}};
}

std::string CertificateReport::to_text() const {
  std::ostringstream os;
  const char* tags[] = {"A", "B"};
  for (std::size_t i = 0; i < inputs.size(); ++i)
    os << tags[i] << ": " << inputs[i].id << " (" << inputs[i].graph.order() << " vertices, "
       << inputs[i].graph.edge_count() << " edges)\n";
  std::size_t width = 0;
  for (const auto& r : relations) width = std::max(width, r.relation.size());
  for (const auto& r : relations) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << r.relation << "  " << to_string(r.verdict);
    if (r.verdict == Verdict::Skipped) os << " (" << r.reason << ")";
    os << "\n";
  }
  if (contradictions.empty()) {
    os << "lattice: consistent\n";
  } else {
    for (const auto& c : contradictions) os << c << "\n";
  }
  return os.str();
}

}  // namespace wlspec

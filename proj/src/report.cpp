#include "coxlab/report.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "coxlab/davis.hpp"
#include "coxlab/diagram.hpp"
#include "coxlab/errors.hpp"

namespace coxlab {

using nlohmann::json;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::BoundedPass: return "bounded-pass";
    case CheckStatus::Skipped: return "skipped";
  }
  return "skipped";
}

CheckStatus check_status_from(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "bounded-pass") return CheckStatus::BoundedPass;
  if (s == "skipped") return CheckStatus::Skipped;
  throw InputError("unknown check status '" + s + "'");
}

bool VerificationReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

int VerificationReport::exit_code() const {
  if (any_fail()) return 1;
  return budget_exhausted ? 2 : 0;
}

json VerificationReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["matrix_digest"] = matrix_digest;
  j["budgets"] = budgets;
  j["budget_exhausted"] = budget_exhausted;
  j["checks"] = json::array();
  for (const auto& c : checks)
    j["checks"].push_back(
        {{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}, {"payload", c.payload}});
  return j;
}

VerificationReport VerificationReport::from_json(const json& j) {
  try {
    VerificationReport r;
    r.suite = j.at("suite").get<std::string>();
    r.matrix_digest = j.at("matrix_digest").get<std::string>();
    r.budgets = j.at("budgets").get<std::map<std::string, std::int64_t>>();
    r.budget_exhausted = j.at("budget_exhausted").get<bool>();
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), check_status_from(c.at("status").get<std::string>()),
                          c.at("detail").get<std::string>(), c.at("payload")});
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed verification report: ") + e.what());
  }
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << " on matrix " << matrix_digest << "\n";
  for (const auto& c : checks) {
    os << "  [" << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  if (budget_exhausted) os << "  budget exhausted\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"facet-bound", "andreev", "stacan",
                                              "nerve-deletion", "comm", "rank"};
  return names;
}

namespace {

json chamber_list(const std::vector<Element>& chambers) {
  json out = json::array();
  for (const auto& c : chambers) out.push_back(CoxeterGroup::format(c));
  return out;
}

json signature_json(const CoxeterMatrix& m) {
  json out = json::array();
  for (const auto& o : signature(m)) out.push_back(o.to_string());
  return out;
}

// Lazily shared census data for one run_suite call.
class Context {
 public:
  Context(CoxeterGroup& g, std::size_t k) : g_(g), k_(k) {}

  CoxeterGroup& group() { return g_; }
  std::size_t k() const { return k_; }
  bool infinite() const { return !is_finite(g_.matrix()); }
  bool infinite_indecomposable() const { return infinite() && is_indecomposable(g_.matrix()); }

  const Census& census() {
    if (!census_) census_ = enumerate_convex_polytopes(g_, k_);
    return *census_;
  }
  const SubgroupCensus& subgroups() {
    if (!subgroups_) subgroups_ = subgroups_from_census(g_, census());
    return *subgroups_;
  }
  const SubgroupCensus& equal_rank() {
    if (!equal_rank_) equal_rank_ = equal_rank_only(g_, subgroups());
    return *equal_rank_;
  }

 private:
  CoxeterGroup& g_;
  std::size_t k_;
  std::optional<Census> census_;
  std::optional<SubgroupCensus> subgroups_;
  std::optional<SubgroupCensus> equal_rank_;
};

CheckResult skipped(std::string name, std::string why) {
  return {std::move(name), CheckStatus::Skipped, std::move(why), json::object()};
}

CheckResult facet_bound_suite(Context& ctx) {
  CheckResult c{"facet-bound", CheckStatus::BoundedPass, "", json::object()};
  auto report = verify_facet_bound(ctx.group(), ctx.census());
  c.payload["polytopes"] = report.polytopes;
  c.payload["min_facets"] = report.min_facets;
  c.payload["truncated"] = ctx.census().truncated;
  if (!report.applicable) {
    c.status = CheckStatus::Skipped;
    c.detail = "precondition: matrix is finite or decomposable";
    return c;
  }
  if (!report.ok()) {
    c.status = CheckStatus::Fail;
    c.detail = std::to_string(report.violations.size()) + " polytopes with fewer facets than the rank";
    c.payload["counterexamples"] = json::array();
    for (const auto& p : report.violations) c.payload["counterexamples"].push_back(chamber_list(p.chambers));
    return c;
  }
  c.detail = std::to_string(report.polytopes) + " polytopes up to " + std::to_string(ctx.k()) +
             " chambers, min facets " + std::to_string(report.min_facets);
  return c;
}

CheckResult andreev_suite(Context& ctx) {
  if (!ctx.infinite()) return skipped("andreev", "precondition: matrix is finite");
  CheckResult c{"andreev", CheckStatus::BoundedPass, "", json::object()};
  std::size_t acute = 0;
  json bad = json::array();
  for (const auto& p : ctx.census().polytopes) {
    if (!is_acute_angled(ctx.group(), p)) continue;
    ++acute;
    for (const auto& v : check_andreev(ctx.group(), p))
      bad.push_back({{"polytope", chamber_list(p.chambers)},
                     {"walls", {CoxeterGroup::format(v.a.reflection), CoxeterGroup::format(v.b.reflection)}}});
  }
  c.payload["acute_polytopes"] = acute;
  if (!bad.empty()) {
    c.status = CheckStatus::Fail;
    c.payload["counterexamples"] = bad;
    c.detail = std::to_string(bad.size()) + " facet pairs whose walls meet but facets do not";
  } else {
    c.detail = std::to_string(acute) + " acute-angled polytopes, no violations";
  }
  return c;
}

CheckResult stacan_suite(Context& ctx) {
  if (!ctx.infinite()) return skipped("stacan", "precondition: matrix is finite");
  CoxeterGroup& g = ctx.group();
  const std::size_t limit = std::min<std::size_t>(ctx.k(), 6);
  std::vector<const ChamberPolytope*> small;
  for (const auto& p : ctx.census().polytopes)
    if (p.size() <= limit) small.push_back(&p);

  CheckResult c{"stacan", CheckStatus::BoundedPass, "", json::object()};
  std::size_t pairs = 0;
  json bad = json::array();
  std::set<std::vector<Element>> done;
  for (const ChamberPolytope* p1 : small) {
    // pairs are taken up to simultaneous left translation
    if (!done.insert(congruence_key(g, *p1)).second) continue;
    for (const auto& [wall, inside] : p1->facets) {
      std::vector<Element> mirrored;
      for (const auto& x : p1->chambers)
        for (Generator s = 0; s < g.rank(); ++s) {
          Element y = g.times_generator(x, s);
          if (!p1->contains(y) && g.panel_root(x, s) == wall.root) mirrored.push_back(std::move(y));
        }
      std::sort(mirrored.begin(), mirrored.end());
      const Element anchor = mirrored.front();
      for (const ChamberPolytope* q : small) {
        std::vector<Element> chambers;
        for (const auto& z : q->chambers) chambers.push_back(g.multiply(anchor, z));
        std::sort(chambers.begin(), chambers.end());
        if (!std::includes(chambers.begin(), chambers.end(), mirrored.begin(), mirrored.end())) continue;
        if (std::any_of(chambers.begin(), chambers.end(), [&](const Element& x) { return p1->contains(x); }))
          continue;
        ChamberPolytope p2 = make_polytope(g, std::move(chambers));
        const auto outcome = check_stacan(g, *p1, p2);
        if (outcome.kind == StacanOutcome::Kind::PreconditionFailed) continue;
        if (!(outcome.common_wall->root == wall.root)) continue;  // counted under its own wall
        ++pairs;
        if (outcome.kind == StacanOutcome::Kind::UnionNotConvex)
          bad.push_back({{"p1", chamber_list(p1->chambers)}, {"p2", chamber_list(p2.chambers)}});
      }
    }
  }
  c.payload["pairs"] = pairs;
  c.payload["max_chambers"] = limit;
  if (!bad.empty()) {
    c.status = CheckStatus::Fail;
    c.payload["counterexamples"] = bad;
    c.detail = std::to_string(bad.size()) + " glued pairs with non-convex union";
  } else {
    c.detail = std::to_string(pairs) + " glued pairs up to " + std::to_string(limit) + " chambers, all convex";
  }
  return c;
}

CheckResult nerve_deletion_suite(Context& ctx) {
  if (!ctx.infinite_indecomposable())
    return skipped("nerve-deletion", "precondition: matrix is finite or decomposable");
  CheckResult c{"nerve-deletion", CheckStatus::BoundedPass, "", json::array()};
  const auto& m = ctx.group().matrix();
  bool failed = false;
  for (const auto& h : ctx.equal_rank().subgroups) {
    auto witness = nerve_deletion_witness(h.induced, m);
    json entry{{"index", *h.index}, {"signature", signature_json(h.induced)}};
    if (witness) {
      json w = json::array();
      for (Generator s : *witness) w.push_back(m.label(s));
      entry["witness"] = w;
    } else {
      entry["witness"] = nullptr;
      failed = true;
    }
    c.payload.push_back(entry);
  }
  if (failed) {
    c.status = CheckStatus::Fail;
    c.detail = "an equal-rank subgroup's nerve does not embed";
  } else {
    c.detail = std::to_string(ctx.equal_rank().subgroups.size()) + " equal-rank subgroups, all embed";
  }
  return c;
}

std::vector<CheckResult> comm_suite(Context& ctx) {
  if (!ctx.infinite_indecomposable())
    return {skipped("comm", "precondition: matrix is finite or decomposable")};
  CoxeterGroup& g = ctx.group();
  const auto& m = g.matrix();
  std::vector<CheckResult> out;

  CheckResult search{"equal-rank-search", CheckStatus::BoundedPass, "", json::object()};
  json found = json::array();
  std::size_t proper = 0;
  for (const auto& h : ctx.equal_rank().subgroups) {
    found.push_back({{"index", *h.index}, {"signature", signature_json(h.induced)},
                     {"nerve_edges", Nerve(h.induced).count_of_size(2)}});
    if (*h.index > 1) ++proper;
  }
  search.payload["subgroups"] = found;
  search.payload["proper"] = proper;
  search.detail = proper == 0 ? "no proper equal-rank subgroup up to " + std::to_string(ctx.k()) + " chambers"
                              : std::to_string(proper) + " proper equal-rank subgroups";
  out.push_back(search);

  const CommCondition cond = comm_condition(m);
  CheckResult comm{"comm", CheckStatus::BoundedPass, "", json::object()};
  comm.payload["condition"] = cond.name();
  if (cond.via1) comm.payload["via1"] = m.label(*cond.via1);
  if (cond.via2) comm.payload["via2"] = m.label(*cond.via2);
  if (proper > 0 && !cond.any()) {
    comm.status = CheckStatus::Fail;
    comm.detail = "proper equal-rank subgroup found but neither condition holds";
  } else {
    comm.detail = std::string("condition ") + cond.name();
  }
  out.push_back(comm);

  const IndexTwoCheck two = index_two_construction(g);
  if (!two.applicable) {
    out.push_back(skipped("index-two", "no generator commutes with all but one with even or infinite exponent"));
  } else {
    CheckResult c{"index-two", two.ok() ? CheckStatus::Pass : CheckStatus::Fail, "", json::object()};
    c.payload["s0"] = m.label(two.s0);
    c.payload["partner"] = m.label(two.partner);
    c.payload["canonical"] = two.canonical;
    c.payload["index"] = two.index ? json(*two.index) : json(nullptr);
    c.detail = two.ok() ? "swapping " + m.label(two.s0) + " gives a canonical index-2 subgroup"
                        : "index-2 construction failed";
    out.push_back(c);
  }
  return out;
}

CheckResult rank_suite(Context& ctx) {
  if (!ctx.infinite_indecomposable()) return skipped("rank", "precondition: matrix is finite or decomposable");
  CheckResult c{"rank", CheckStatus::BoundedPass, "", json::object()};
  json bad = json::array();
  const auto& subs = ctx.subgroups().subgroups;
  for (const auto& h : subs) {
    auto r = verify_rank_theorem(ctx.group(), h);
    if (!r.ok())
      bad.push_back({{"polytope", chamber_list(h.polytope->chambers)}, {"generators", h.rank()},
                     {"span_rank", r.span_rank}});
  }
  c.payload["subgroups"] = subs.size();
  if (!bad.empty()) {
    c.status = CheckStatus::Fail;
    c.payload["counterexamples"] = bad;
    c.detail = std::to_string(bad.size()) + " finite-index subgroups below the rank bound";
  } else {
    c.detail = std::to_string(subs.size()) + " finite-index subgroups, all with full rank and span";
  }
  return c;
}

std::vector<CheckResult> run_one(Context& ctx, const std::string& suite) {
  if (suite == "facet-bound") return {facet_bound_suite(ctx)};
  if (suite == "andreev") return {andreev_suite(ctx)};
  if (suite == "stacan") return {stacan_suite(ctx)};
  if (suite == "nerve-deletion") return {nerve_deletion_suite(ctx)};
  if (suite == "comm") return comm_suite(ctx);
  if (suite == "rank") return {rank_suite(ctx)};
  throw InputError("unknown suite '" + suite + "'");
}

}  // namespace

VerificationReport run_suite(CoxeterGroup& g, const std::string& suite, std::size_t max_chambers) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw InputError("unknown suite '" + suite + "'");
  VerificationReport r;
  r.suite = suite;
  r.matrix_digest = g.matrix().digest();
  r.budgets = {{"max_chambers", static_cast<std::int64_t>(max_chambers)},
               {"max_elements", static_cast<std::int64_t>(g.budget().max_elements)},
               {"max_reflection_length", g.budget().max_reflection_length}};
  Context ctx(g, max_chambers);
  const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  for (const auto& name : names) {
    try {
      for (auto& c : run_one(ctx, name)) r.checks.push_back(std::move(c));
    } catch (const BudgetError& e) {
      r.checks.push_back(skipped(name, std::string("budget exhausted: ") + e.what()));
      r.budget_exhausted = true;
    }
  }
  return r;
}

json subgroup_report(CoxeterGroup& g, const ReflectionSubgroup& h) {
  json j;
  j["generators"] = json::array();
  for (const auto& w : h.generators) j["generators"].push_back(CoxeterGroup::format(w.reflection));
  j["induced_m"] = h.induced.codes();
  j["index"] = h.index ? json(*h.index) : json(">budget");
  j["polytope"] = h.polytope ? chamber_list(h.polytope->chambers) : json::array();
  if (h.index && h.rank() == g.rank()) {
    auto w = nerve_deletion_witness(h.induced, g.matrix());
    j["nerve_deletion"] = w.has_value();
  } else {
    j["nerve_deletion"] = nullptr;
  }
  const auto r = verify_rank_theorem(g, h);
  j["theorems"] = {{"applicable", r.applicable},  {"finite_index", r.finite_index},
                   {"rank_ok", r.generators_ok},  {"facets_ok", r.facets_ok},
                   {"span_rank", r.span_rank},    {"span_ok", r.span_ok}};
  return j;
}

}  // namespace coxlab

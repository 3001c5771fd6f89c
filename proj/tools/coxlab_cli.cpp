// coxlab: command-line front end over the library.
//
// Exit codes: 0 success, 1 a check failed, 2 a budget ran out,
// 3 unreadable input (matrix, word, or a word that is not a reflection).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coxlab/davis.hpp"
#include "coxlab/diagram.hpp"
#include "coxlab/errors.hpp"
#include "coxlab/report.hpp"
#include "coxlab/subgroups.hpp"

using namespace coxlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

// COXLAB_BUDGET is either a bare element cap ("50000") or a comma list of
// key=value pairs: elements, reflection_length, chambers, field_level, order.
Budget budget_from_env() {
  Budget b;
  const char* env = std::getenv("COXLAB_BUDGET");
  if (!env || !*env) return b;
  auto number = [](const std::string& text) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(text, &used);
    } catch (const std::exception&) {
    }
    if (used != text.size() || v < 0) throw InputError("COXLAB_BUDGET: bad number '" + text + "'");
    return v;
  };
  std::string value(env);
  if (value.find('=') == std::string::npos) {
    b.max_elements = static_cast<std::size_t>(number(value));
    return b;
  }
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("COXLAB_BUDGET: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const long long v = number(item.substr(eq + 1));
    if (key == "elements")
      b.max_elements = static_cast<std::size_t>(v);
    else if (key == "reflection_length")
      b.max_reflection_length = static_cast<int>(v);
    else if (key == "chambers")
      b.max_chambers = static_cast<std::size_t>(v);
    else if (key == "field_level")
      b.max_field_level = static_cast<std::uint32_t>(v);
    else if (key == "order")
      b.order_cap = static_cast<int>(v);
    else
      throw InputError("COXLAB_BUDGET: unknown key '" + key + "'");
  }
  return b;
}

std::string kind(const CoxeterMatrix& m, GeneratorSet subset) {
  auto t = finite_type(m, subset);
  return t ? "finite (" + *t + ")" : "infinite";
}

std::string nerve_summary(const CoxeterMatrix& m) {
  Nerve n(m);
  std::ostringstream os;
  os << "nerve: " << n.vertex_count() << " vertices, " << n.count_of_size(2) << " edges";
  for (int k = 3; k <= n.dimension() + 1; ++k) os << ", " << n.count_of_size(k) << " " << k - 1 << "-simplices";
  return os.str();
}

int cmd_classify(const std::string& file) {
  const CoxeterMatrix m = load_matrix(file);
  const auto comps = components(m);
  if (comps.size() == 1) {
    std::cout << (is_finite(m) ? kind(m, m.all_generators()) : "infinite") << ", indecomposable; "
              << nerve_summary(m) << "\n";
  } else {
    std::cout << "decomposable:";
    for (std::size_t i = 0; i < comps.size(); ++i)
      std::cout << (i ? ", " : " ") << format_set(m, comps[i].vertices) << " " << kind(m, comps[i].vertices);
    std::cout << "; " << (is_finite(m) ? "finite" : "infinite") << "; " << nerve_summary(m) << "\n";
  }
  return 0;
}

int cmd_nerve(const std::string& file) {
  const CoxeterMatrix m = load_matrix(file);
  std::cout << nerve_summary(m) << "\n";
  for (GeneratorSet s : Nerve(m).simplices()) std::cout << format_set(m, s) << "\n";
  return 0;
}

int cmd_subgroup(const std::string& file, const std::string& reflections, std::size_t budget, bool as_json) {
  CoxeterGroup g(load_matrix(file), budget_from_env());
  std::vector<Wall> walls;
  std::stringstream ss(reflections);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const Element e = g.normal_form(g.parse_word(item));
    auto w = g.as_reflection(e);
    if (!w) throw InputError("'" + item + "' is not a reflection");
    walls.push_back(*w);
  }
  if (walls.empty()) throw InputError("no reflections given");

  const ReflectionSubgroup h = make_subgroup(g, walls, budget);
  const auto report = subgroup_report(g, h);
  if (as_json) {
    std::cout << report.dump() << "\n";
  } else {
    std::cout << "generators:";
    for (const auto& w : h.generators) std::cout << " [" << CoxeterGroup::format(w.reflection) << "]";
    std::cout << "\ninduced signature:";
    for (const auto& o : signature(h.induced)) std::cout << " " << o.to_string();
    std::cout << "\nindex: " << (h.index ? std::to_string(*h.index) : "> " + std::to_string(budget)) << "\n";
    const auto& th = report["theorems"];
    std::cout << "rank " << h.rank() << (th["rank_ok"].get<bool>() ? " >= " : " < ") << g.rank()
              << ", root span " << th["span_rank"].get<int>() << "\n";
    if (!th["applicable"].get<bool>()) std::cout << "rank theorem: skipped (matrix finite or decomposable)\n";
  }
  return h.index ? 0 : kExitBudget;
}

int cmd_polytopes(const std::string& file, std::size_t k, const std::string& emit) {
  CoxeterGroup g(load_matrix(file), budget_from_env());
  const Census census = enumerate_convex_polytopes(g, k);
  std::size_t coxeter = 0, acute = 0, min_facets = census.polytopes.empty() ? 0 : SIZE_MAX;
  std::ofstream out;
  if (!emit.empty()) {
    out.open(emit);
    if (!out) throw InputError("cannot write " + emit);
  }
  for (const auto& p : census.polytopes) {
    coxeter += is_coxeter_polytope(g, p);
    acute += is_acute_angled(g, p);
    min_facets = std::min(min_facets, p.facet_count());
    if (out.is_open()) out << census_json_line(g, p) << "\n";
  }
  std::cout << census.polytopes.size() << " convex polytopes up to " << k << " chambers; min facets "
            << min_facets << "; " << coxeter << " Coxeter; " << acute << " acute-angled"
            << (census.truncated ? " (truncated by budget)" : "") << "\n";
  return census.truncated ? kExitBudget : 0;
}

int cmd_verify(const std::string& file, const std::string& suite, std::size_t k, bool as_json) {
  CoxeterGroup g(load_matrix(file), budget_from_env());
  const VerificationReport r = run_suite(g, suite, k);
  if (as_json)
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.to_text();
  return r.exit_code() == 1 ? kExitFail : r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter groups, reflection subgroups and chamber polytopes"};
  app.require_subcommand(1);

  std::string file, reflections, suite = "all", emit;
  std::size_t budget = 0, chambers = 0;
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "finiteness, components and nerve");
  classify->add_option("file", file, "matrix file")->required();
  auto* nerve = app.add_subcommand("nerve", "list the spherical subsets");
  nerve->add_option("file", file, "matrix file")->required();
  auto* subgroup = app.add_subcommand("subgroup", "analyse the subgroup generated by reflections");
  subgroup->add_option("file", file, "matrix file")->required();
  subgroup->add_option("--reflections", reflections, "words separated by ';', e.g. \"2;3;1 3 1\"")->required();
  subgroup->add_option("--budget", budget, "max chambers of the fundamental polytope");
  subgroup->add_flag("--json", as_json, "print the JSON report");
  auto* polytopes = app.add_subcommand("polytopes", "census of convex chamber polytopes containing e");
  polytopes->add_option("file", file, "matrix file")->required();
  polytopes->add_option("--max-chambers", chambers, "chamber budget K");
  polytopes->add_option("--emit", emit, "write JSON lines here");
  auto* verify = app.add_subcommand("verify", "run bounded theorem checks");
  verify->add_option("file", file, "matrix file")->required();
  verify->add_option("--suite", suite, "facet-bound|andreev|stacan|nerve-deletion|comm|rank|all");
  verify->add_option("--max-chambers", chambers, "chamber budget K");
  verify->add_flag("--json", as_json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const Budget defaults = budget_from_env();
    if (budget == 0) budget = 1000;
    if (chambers == 0) chambers = defaults.max_chambers;
    if (*classify) return cmd_classify(file);
    if (*nerve) return cmd_nerve(file);
    if (*subgroup) return cmd_subgroup(file, reflections, budget, as_json);
    if (*polytopes) return cmd_polytopes(file, chambers, emit);
    if (*verify) return cmd_verify(file, suite, chambers, as_json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}

#include "scenario.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "sampling.hpp"

namespace fermifold::cli {

namespace {

/// An oracle comparison exceeded its tolerance.
class OracleMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TaskContext {
  std::string id;
  const json* payload = nullptr;
  std::optional<SectorConfig> cfg;
  Settings settings;
  std::uint64_t seed = 0;

  const json& at(const char* key) const { return require(*payload, key, id); }
  bool has(const char* key) const { return payload->contains(key); }
  std::string where(const std::string& field) const { return id + "." + field; }

  const SectorConfig& config() const {
    if (!cfg) throw PayloadError(id + ": this task kind needs a sector config");
    return *cfg;
  }
};

struct TaskResult {
  json value;
  json diagnostics = json::object();
};

OperatorExpr parse_bound(const TaskContext& ctx, const std::string& text) {
  return ctx.cfg ? parse(text, *ctx.cfg) : parse(text);
}

NormalForm<ExactScalar> normal_form(const TaskContext& ctx, const OperatorExpr& e) {
  return normal_order(e, ctx.settings.rewrite_limit);
}

std::vector<ModeIndex> modes_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw PayloadError(where + ": expected an array of modes");
  std::vector<ModeIndex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(mode_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

struct ParsedState {
  StateVector vector;
  std::optional<FockState> basis;  // set when the state is a single product state
};

/// {"occupied": [...], "base": [...]?, "ordering": "product" | "basis"?, "amplitude": c?}
/// or {"superposition": [state, ...]}.
ParsedState state_from(const json& j, const SectorConfig& cfg, const std::string& where) {
  if (j.contains("superposition")) {
    const auto& parts = j.at("superposition");
    if (!parts.is_array() || parts.empty()) throw PayloadError(where + ".superposition: expected a non-empty array");
    StateVector sum(cfg);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      sum += state_from(parts[i], cfg, where + ".superposition[" + std::to_string(i) + "]").vector;
    }
    return {sum, std::nullopt};
  }
  const auto occupied = modes_from(require(j, "occupied", where), where + ".occupied");
  const std::set<ModeIndex> unique(occupied.begin(), occupied.end());
  if (unique.size() != occupied.size()) throw PayloadError(where + ": a mode is listed twice");
  const auto base = j.contains("base") ? base_from(j.at("base"), where + ".base") : std::array<std::uint8_t, 4>{};
  const FockState s = basis_state(cfg, occupied, base);
  const std::string ordering = j.contains("ordering") ? string_from(j.at("ordering"), where + ".ordering") : "product";
  StateVector v(cfg);
  if (ordering == "product") {
    v = ordered_product_state(s);
  } else if (ordering == "basis") {
    v = StateVector(s);
  } else {
    throw PayloadError(where + ".ordering: expected 'product' or 'basis'");
  }
  if (j.contains("amplitude")) {
    v *= complex_from(j.at("amplitude"), where + ".amplitude");
    return {v, std::nullopt};
  }
  return {v, ordering == "product" ? std::optional<FockState>(s) : std::nullopt};
}

TaskResult fock_element(const TaskContext& ctx) {
  const auto& cfg = ctx.config();
  const auto bra = state_from(ctx.at("bra"), cfg, ctx.where("bra"));
  const auto ket = state_from(ctx.at("ket"), cfg, ctx.where("ket"));
  const auto op = parse(string_from(ctx.at("operator"), ctx.where("operator")), cfg);
  TaskResult r;
  r.value = complex_json(inner_product(bra.vector, apply(op, ket.vector)));
  r.diagnostics["operator_terms"] = op.terms().size();
  if (bra.basis && ket.basis && op.terms().size() == 1 && op.terms()[0].gens.size() == 1) {
    const auto& t = op.terms()[0];
    if (t.scalar == ExactScalar{Rational(1), Rational(0)}) {
      r.diagnostics["phase"] = regulated_set_element(*bra.basis, t.gens[0], *ket.basis);
    }
  }
  return r;
}

std::array<std::uint8_t, 4> optional_base(const TaskContext& ctx) {
  return ctx.has("base") ? base_from(ctx.at("base"), ctx.where("base")) : std::array<std::uint8_t, 4>{};
}

TaskResult expr_vev(const TaskContext& ctx) {
  const auto e = parse_bound(ctx, string_from(ctx.at("expr"), ctx.where("expr")));
  const auto nf = normal_form(ctx, e);
  TaskResult r;
  r.value = complex_json(vev(nf.expr, optional_base(ctx)));
  r.diagnostics["normal_form"] = to_string(nf.expr);
  r.diagnostics["terms"] = nf.expr.terms().size();
  r.diagnostics["rewrite_steps"] = nf.steps;
  return r;
}

TaskResult normal_order_task(const TaskContext& ctx) {
  const auto e = parse_bound(ctx, string_from(ctx.at("expr"), ctx.where("expr")));
  const auto nf = normal_form(ctx, e);
  TaskResult r;
  r.value = to_string(nf.expr);
  r.diagnostics["terms"] = nf.expr.terms().size();
  r.diagnostics["rewrite_steps"] = nf.steps;
  if (ctx.has("verify") && ctx.at("verify").get<bool>()) {
    const double diff = max_abs_difference(e, nf.expr, ctx.config(), ctx.settings.oracle_ceiling);
    r.diagnostics["oracle_max_abs_difference"] = diff;
    if (diff > ctx.settings.tolerance) {
      throw OracleMismatch(ctx.id + ": normal form differs from the input by " + std::to_string(diff));
    }
  }
  return r;
}

/// {"type": "constant", "value": c} or
/// {"type": "plane-wave", "momentum": [3], "mass": m, "spin": s, "frequency": f, "component": a}.
Profile profile_from(const json& j, const std::string& where) {
  const auto type = string_from(require(j, "type", where), where + ".type");
  if (type == "constant") {
    const cplx v = complex_from(require(j, "value", where), where + ".value");
    return [v](const PointSector&) { return v; };
  }
  if (type == "plane-wave") {
    const auto q = mass_shell(triple_from(require(j, "momentum", where), where + ".momentum"),
                              number_from(require(j, "mass", where), where + ".mass"));
    const int spin = integer_from(require(j, "spin", where), where + ".spin");
    if (spin != 1 && spin != -1) throw PayloadError(where + ".spin: expected +1 or -1");
    const auto freq = string_from(require(j, "frequency", where), where + ".frequency");
    if (freq != "positive" && freq != "negative") throw PayloadError(where + ".frequency: expected positive or negative");
    const int comp = integer_from(require(j, "component", where), where + ".component");
    if (comp < 0 || comp > 3) throw PayloadError(where + ".component: expected 0..3");
    const Frequency f = freq == "positive" ? Frequency::positive : Frequency::negative;
    return [q, spin, f, comp](const PointSector& x) { return plane_wave(x, q, spin, f)(comp); };
  }
  throw PayloadError(where + ".type: unknown profile '" + type + "'");
}

WaveFunctionSet wave_functions(const TaskContext& ctx, const std::vector<ModeIndex>& modes) {
  const json empty = json::object();
  const json& given = ctx.has("wave_functions") ? ctx.at("wave_functions") : empty;
  if (!given.is_object()) throw PayloadError(ctx.where("wave_functions") + ": expected an object keyed by mode");
  std::map<ModeIndex, std::pair<std::string, const json*>> specs;
  for (const auto& [key, value] : given.items()) {
    specs[mode_from(json(key), ctx.where("wave_functions"))] = {key, &value};
  }
  WaveFunctionSet fs;
  for (const auto& m : modes) {
    if (fs.contains(m)) continue;
    ComponentVector weights{cplx{1.0}, cplx{1.0}, cplx{1.0}};
    Profile profile = [](const PointSector&) { return cplx{1.0}; };
    if (auto it = specs.find(m); it != specs.end()) {
      const auto& spec = *it->second.second;
      const auto where = ctx.where("wave_functions." + it->second.first);
      if (spec.contains("weights")) {
        const auto& w = spec.at("weights");
        if (!w.is_array() || w.size() != 3) throw PayloadError(where + ".weights: expected three complex numbers");
        for (std::size_t a = 0; a < 3; ++a) weights[a] = complex_from(w[a], where + ".weights");
      }
      if (spec.contains("profile")) profile = profile_from(spec.at("profile"), where + ".profile");
    }
    fs.emplace(m, make_F(m, weights, profile));
  }
  return fs;
}

TaskResult slater(const TaskContext& ctx) {
  const auto& pts_json = ctx.at("points");
  if (!pts_json.is_array()) throw PayloadError(ctx.where("points") + ": expected an array");
  std::vector<PointSector> points;
  for (std::size_t i = 0; i < pts_json.size(); ++i) {
    points.push_back(point_from(pts_json[i], ctx.where("points[" + std::to_string(i) + "]")));
  }
  const auto modes = modes_from(ctx.at("modes"), ctx.where("modes"));
  const cplx amp = ctx.has("amplitude") ? complex_from(ctx.at("amplitude"), ctx.where("amplitude")) : cplx{1.0};
  const auto fs = wave_functions(ctx, modes);
  TaskResult r;
  if (ctx.has("slots")) {
    const auto& s = ctx.at("slots");
    if (!s.is_array()) throw PayloadError(ctx.where("slots") + ": expected an array");
    std::vector<int> slots;
    for (const auto& v : s) slots.push_back(integer_from(v, ctx.where("slots")));
    r.value = complex_json(slater_matrix_element(points, modes, amp, fs, slots));
    r.diagnostics["mode"] = "slots";
    return r;
  }
  if (ctx.has("contracted") && ctx.at("contracted").get<bool>()) {
    r.value = complex_json(slater_matrix_element_contracted(points, modes, amp, fs));
    r.diagnostics["mode"] = "contracted";
    return r;
  }
  const auto form = slater_form(points, modes, amp, fs);
  r.value = json::array();
  for (const auto& [idx, c] : form.terms()) r.value.push_back({{"slots", idx}, {"value", complex_json(c(Point::Zero(kChartDim)))}});
  r.diagnostics["mode"] = "form";
  r.diagnostics["degree"] = form.degree();
  r.diagnostics["terms"] = form.terms().size();
  return r;
}

TaskResult form_op(const TaskContext& ctx) {
  const auto op = string_from(ctx.at("op"), ctx.where("op"));
  TaskResult r;
  r.diagnostics["op"] = op;
  if (op == "evaluate") {
    const auto form = form_from(ctx.at("form"), ctx.where("form"));
    const auto& vs = ctx.at("vectors");
    if (!vs.is_array()) throw PayloadError(ctx.where("vectors") + ": expected an array");
    std::vector<Point> vectors;
    for (const auto& v : vs) vectors.push_back(vector_from(v, ctx.where("vectors")));
    r.value = evaluate(form, std::span<const Point>(vectors), vector_from(ctx.at("point"), ctx.where("point")));
    return r;
  }
  FormK out;
  if (op == "wedge") {
    out = wedge(form_from(ctx.at("a"), ctx.where("a")), form_from(ctx.at("b"), ctx.where("b")));
  } else if (op == "d") {
    out = exterior_derivative(form_from(ctx.at("form"), ctx.where("form")));
  } else if (op == "pullback") {
    const auto form = form_from(ctx.at("form"), ctx.where("form"));
    const int src = integer_from(ctx.at("source_dim"), ctx.where("source_dim"));
    out = pullback(map_from(ctx.at("map"), src, ctx.where("map")), form);
  } else if (op == "interior") {
    const auto form = form_from(ctx.at("form"), ctx.where("form"));
    const auto field = field_from(ctx.at("field"), form.dim(), ctx.where("field"));
    if (field.dim() != form.dim()) throw PayloadError(ctx.where("field") + ": dimension differs from the form");
    out = interior(std::span<const Coefficient<double>>(field.components()), form);
  } else if (op == "lie") {
    const auto form = form_from(ctx.at("form"), ctx.where("form"));
    const auto field = field_from(ctx.at("field"), form.dim(), ctx.where("field"));
    out = cartan_lie_form(field, form);
    if (ctx.has("point")) {
      const auto x = vector_from(ctx.at("point"), ctx.where("point"));
      double dev = 0.0;
      for (const auto& [idx, v] : lie_form_at(field, form, x, ctx.settings.flow_time)) {
        dev = std::max(dev, std::abs(v - out.coefficient_at(idx, x)));
      }
      r.diagnostics["flow_limit_deviation"] = dev;
      if (dev > ctx.settings.lie_tolerance) {
        throw OracleMismatch(ctx.id + ": flow limit and Cartan formula differ by " + std::to_string(dev));
      }
    }
  } else {
    throw PayloadError(ctx.where("op") + ": unknown operation '" + op + "'");
  }
  r.value = form_json(out);
  r.diagnostics["terms"] = out.terms().size();
  return r;
}

TaskResult integrate_task(const TaskContext& ctx) {
  const auto form = form_from(ctx.at("form"), ctx.where("form"));
  const auto& pieces = ctx.at("chain");
  if (!pieces.is_array()) throw PayloadError(ctx.where("chain") + ": expected an array of pieces");
  Chain chain;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto where = ctx.where("chain[" + std::to_string(i) + "]");
    const auto& p = pieces[i];
    Box box{vector_from(require(p, "lower", where), where + ".lower"),
            vector_from(require(p, "upper", where), where + ".upper")};
    SmoothMap map = p.contains("map") ? map_from(p.at("map"), box.dim(), where + ".map") : SmoothMap::identity(box.dim());
    const int orientation = p.contains("orientation") ? integer_from(p.at("orientation"), where + ".orientation") : 1;
    const int multiplicity = p.contains("multiplicity") ? integer_from(p.at("multiplicity"), where + ".multiplicity") : 1;
    chain.add(ChainPiece{std::move(box), std::move(map), orientation, multiplicity});
  }
  const int order = ctx.has("order") ? integer_from(ctx.at("order"), ctx.where("order")) : ctx.settings.quadrature_order;
  const auto res = integrate(form, chain, order);
  TaskResult r;
  r.value = res.value;
  r.diagnostics["error_estimate"] = res.error_estimate;
  r.diagnostics["order"] = order;
  r.diagnostics["pieces"] = chain.pieces.size();
  return r;
}

struct CheckTally {
  std::size_t checked = 0;
  double max_deviation = 0.0;

  void record(double dev) {
    ++checked;
    max_deviation = std::max(max_deviation, dev);
  }
};

double int_deviation(const IntMatrix& m) {
  int best = 0;
  for (std::ptrdiff_t k = 0; k < m.outerSize(); ++k) {
    for (IntMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

TaskResult oracle_check(const TaskContext& ctx) {
  const auto& cfg = ctx.config();
  const int ceiling = ctx.settings.oracle_ceiling;
  check_ceiling(cfg, ceiling);
  const auto check = string_from(ctx.at("check"), ctx.where("check"));
  const auto modes = all_modes(cfg);
  CheckTally tally;
  double tolerance = 0.0;
  TaskResult r;
  r.diagnostics["modes"] = cfg.total();
  if (check == "anticommutators") {
    const IntMatrix id = dense_identity(cfg, ceiling);
    std::vector<IntMatrix> b;
    std::vector<IntMatrix> bd;
    for (const auto& m : modes) {
      b.push_back(dense_matrix(cfg, annihilator(m.sector, m.serial), ceiling));
      bd.push_back(dense_matrix(cfg, creator(m.sector, m.serial), ceiling));
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
      for (std::size_t j = 0; j < modes.size(); ++j) {
        if (modes[i].sector == modes[j].sector) {
          IntMatrix mixed = b[i] * bd[j] + bd[j] * b[i];
          if (i == j) mixed -= id;
          tally.record(int_deviation(mixed));
          tally.record(int_deviation(IntMatrix(b[i] * b[j] + b[j] * b[i])));
        } else {
          tally.record(int_deviation(IntMatrix(b[i] * bd[j] - bd[j] * b[i])));
          tally.record(int_deviation(IntMatrix(b[i] * b[j] - b[j] * b[i])));
        }
      }
    }
  } else if (check == "sign-rule") {
    for (const auto& m : modes) {
      for (const auto& g : {creator(m.sector, m.serial), annihilator(m.sector, m.serial)}) {
        tally.record(int_deviation(IntMatrix(fast_path_matrix(cfg, g, ceiling) - dense_matrix(cfg, g, ceiling))));
      }
    }
  } else if (check == "number-operators") {
    std::vector<ComplexMatrix> n;
    for (const auto& m : modes) {
      n.push_back(expression_matrix(OperatorExpr({Term<ExactScalar>{ExactScalar{Rational(1), Rational(0)},
                                                                    {creator(m.sector, m.serial), annihilator(m.sector, m.serial)}}}),
                                    cfg, ceiling));
    }
    for (std::size_t idx = 0; idx < basis_size(cfg); ++idx) {
      const auto s = basis_state_at(cfg, idx);
      for (std::size_t k = 0; k < modes.size(); ++k) {
        const cplx v = n[k].coeff(static_cast<std::ptrdiff_t>(idx), static_cast<std::ptrdiff_t>(idx));
        tally.record(std::abs(v - static_cast<double>(occupation(s, modes[k]))));
      }
    }
  } else if (check == "normal-order") {
    tolerance = ctx.settings.tolerance;
    std::vector<OperatorExpr> exprs;
    if (ctx.has("expr")) {
      exprs.push_back(parse(string_from(ctx.at("expr"), ctx.where("expr")), cfg));
    } else {
      const int count = ctx.has("count") ? integer_from(ctx.at("count"), ctx.where("count")) : 20;
      const int max_gens = ctx.has("max_generators") ? integer_from(ctx.at("max_generators"), ctx.where("max_generators")) : 6;
      if (cfg.total() == 0) throw PayloadError(ctx.id + ": random expressions need at least one mode");
      Sampler sampler(ctx.seed);
      for (int i = 0; i < count; ++i) exprs.push_back(sampler.expression(cfg, max_gens, 3));
    }
    std::size_t steps = 0;
    for (const auto& e : exprs) {
      const auto nf = normal_form(ctx, e);
      steps = std::max(steps, nf.steps);
      tally.record(max_abs_difference(e, nf.expr, cfg, ceiling));
    }
    r.diagnostics["max_rewrite_steps"] = steps;
  } else {
    throw PayloadError(ctx.where("check") + ": unknown check '" + check + "'");
  }
  r.value = {{"passed", tally.max_deviation <= tolerance}, {"max_deviation", tally.max_deviation}, {"checked", tally.checked}};
  if (tally.max_deviation > tolerance) {
    throw OracleMismatch(ctx.id + ": " + check + " deviates from the oracle by " + std::to_string(tally.max_deviation));
  }
  return r;
}

const std::map<std::string, std::function<TaskResult(const TaskContext&)>>& handlers() {
  static const std::map<std::string, std::function<TaskResult(const TaskContext&)>> table{
      {"fock-element", fock_element}, {"expr-vev", expr_vev},     {"normal-order", normal_order_task},
      {"slater", slater},             {"form-op", form_op},       {"integrate", integrate_task},
      {"oracle-check", oracle_check},
  };
  return table;
}

/// Stable error category names for the report.
std::string classify(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const CapacityError&) {
    return "capacity";
  } catch (const SyntaxError&) {
    return "syntax";
  } catch (const RewriteLimitError&) {
    return "rewrite-limit";
  } catch (const OracleMismatch&) {
    return "oracle-mismatch";
  } catch (const PayloadError&) {
    return "payload";
  } catch (const RangeError&) {
    return "range";
  } catch (const ShapeError&) {
    return "shape";
  } catch (const DegreeError&) {
    return "degree";
  } catch (const DomainError&) {
    return "domain";
  } catch (const nlohmann::json::exception&) {
    return "payload";
  } catch (...) {
    return "internal";
  }
}

json run_task(const TaskContext& ctx, const std::string& kind) {
  json entry{{"id", ctx.id}, {"kind", kind}};
  try {
    spdlog::debug("task {} ({}) started", ctx.id, kind);
    auto r = handlers().at(kind)(ctx);
    entry["status"] = "ok";
    entry["value"] = std::move(r.value);
    entry["diagnostics"] = std::move(r.diagnostics);
  } catch (const std::exception& e) {
    const auto type = classify(std::current_exception());
    std::string message = e.what();
    if (message.rfind(ctx.id + ":", 0) != 0 && message.rfind(ctx.id + ".", 0) != 0) message = ctx.id + ": " + message;
    spdlog::warn("task {} failed ({}): {}", ctx.id, type, message);
    entry["status"] = "error";
    entry["error"] = {{"type", type}, {"message", message}};
  }
  return entry;
}

const std::set<std::string> kScenarioKeys{"description", "config", "settings", "tasks"};

}  // namespace

Settings merge_settings(Settings base, const json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": settings must be an object");
  for (const auto& [key, v] : j.items()) {
    const auto at = where + "." + key;
    const auto positive_int = [&]() {
      if (!v.is_number_integer() || v.get<long long>() < 1) throw SchemaError(at + ": expected a positive integer");
      return v.get<long long>();
    };
    const auto positive_real = [&]() {
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw SchemaError(at + ": expected a positive number");
      return v.get<double>();
    };
    if (key == "oracle_ceiling") base.oracle_ceiling = static_cast<int>(positive_int());
    else if (key == "tolerance") base.tolerance = positive_real();
    else if (key == "lie_tolerance") base.lie_tolerance = positive_real();
    else if (key == "rewrite_limit") base.rewrite_limit = static_cast<std::size_t>(positive_int());
    else if (key == "quadrature_order") base.quadrature_order = static_cast<int>(positive_int());
    else if (key == "flow_time") base.flow_time = positive_real();
    else throw SchemaError(at + ": unknown setting");
  }
  return base;
}

RunOutcome run_scenario(const json& scenario, const RunOptions& options) {
  if (!scenario.is_object()) throw SchemaError("scenario: top level must be an object");
  for (const auto& [key, v] : scenario.items()) {
    if (!kScenarioKeys.contains(key)) throw SchemaError("scenario: unknown top-level field '" + key + "'");
  }
  if (!scenario.contains("tasks") || !scenario.at("tasks").is_array()) {
    throw SchemaError("scenario: 'tasks' must be an array");
  }
  std::optional<SectorConfig> cfg;
  if (scenario.contains("config")) cfg = config_from(scenario.at("config"), "scenario.config");
  const Settings defaults =
      scenario.contains("settings") ? merge_settings(Settings{}, scenario.at("settings"), "scenario.settings") : Settings{};

  const auto& tasks = scenario.at("tasks");
  std::vector<TaskContext> contexts;
  std::vector<std::string> kinds;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const auto where = "tasks[" + std::to_string(i) + "]";
    if (!t.is_object()) throw SchemaError(where + ": task must be an object");
    if (!t.contains("id") || !t.at("id").is_string() || t.at("id").get<std::string>().empty()) {
      throw SchemaError(where + ": task needs a non-empty string 'id'");
    }
    const auto id = t.at("id").get<std::string>();
    if (!ids.insert(id).second) throw SchemaError(where + ": duplicate task id '" + id + "'");
    if (!t.contains("kind") || !t.at("kind").is_string() || !handlers().contains(t.at("kind").get<std::string>())) {
      throw SchemaError(id + ": 'kind' must be one of fock-element, expr-vev, normal-order, slater, form-op, "
                             "integrate, oracle-check");
    }
    TaskContext ctx;
    ctx.id = id;
    ctx.payload = &t;
    ctx.cfg = t.contains("config") ? std::optional(config_from(t.at("config"), id + ".config")) : cfg;
    ctx.settings = t.contains("settings") ? merge_settings(defaults, t.at("settings"), id + ".settings") : defaults;
    ctx.seed = options.seed * 0x9E3779B97F4A7C15ULL + i;
    contexts.push_back(std::move(ctx));
    kinds.push_back(t.at("kind").get<std::string>());
  }

  std::vector<json> entries(contexts.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(contexts.size())));
  std::atomic<std::size_t> next{0};
  const auto work = [&]() {
    for (std::size_t i = next++; i < contexts.size(); i = next++) entries[i] = run_task(contexts[i], kinds[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  RunOutcome out;
  std::size_t ok = 0;
  json list = json::array();
  for (auto& e : entries) {
    if (e.at("status") == "ok") ++ok;
    list.push_back(std::move(e));
  }
  out.all_ok = ok == list.size();
  out.report = {{"seed", options.seed},
                {"tasks", std::move(list)},
                {"summary", {{"total", contexts.size()}, {"ok", ok}, {"error", contexts.size() - ok}}}};
  return out;
}

}  // namespace fermifold::cli

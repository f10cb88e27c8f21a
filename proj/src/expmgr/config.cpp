#include "mbrl/expmgr/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mbrl {
namespace {

// ---------------------------------------------------------------- raw parse

struct RawValue {
  enum class Type { number, boolean, string, list, matrix };
  Type type = Type::number;
  double num = 0.0;
  bool b = false;
  std::string str;
  std::vector<double> list;
  std::vector<std::vector<double>> mat;
  int line = 0;
};

struct RawSection {
  std::string name;  // "env", "scheduler eps", ...
  int line = 0;
  std::map<std::string, RawValue> kv;
};

class Cursor {
 public:
  Cursor(const std::string& s, int line) : s_(s), line_(line) {}
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return s_[pos_++]; }
  int col() const { return static_cast<int>(pos_) + 1; }
  int line() const { return line_; }
  [[noreturn]] void fail(const std::string& msg) {
    throw ConfigSyntaxError(line_, col(), msg);
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

double parse_number_token(Cursor& c, const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) c.fail("malformed number '" + tok + "'");
  return v;
}

std::string read_token(Cursor& c) {
  c.skip_ws();
  std::string tok;
  while (!c.done()) {
    const char ch = c.peek();
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == ']' || ch == '#')
      break;
    tok.push_back(c.take());
  }
  return tok;
}

std::vector<double> parse_number_list(Cursor& c) {
  std::vector<double> out;
  c.skip_ws();
  if (c.peek() != '[') c.fail("expected '['");
  c.take();
  c.skip_ws();
  if (c.peek() == ']') {
    c.take();
    return out;
  }
  while (true) {
    const std::string tok = read_token(c);
    if (tok.empty()) c.fail("expected a number");
    out.push_back(parse_number_token(c, tok));
    c.skip_ws();
    if (c.peek() == ',') {
      c.take();
      continue;
    }
    if (c.peek() == ']') {
      c.take();
      return out;
    }
    c.fail("expected ',' or ']' in list");
  }
}

RawValue parse_value(Cursor& c) {
  RawValue v;
  v.line = c.line();
  c.skip_ws();
  const char ch = c.peek();
  if (ch == '[') {
    // list of numbers or list of lists (matrix)
    c.take();
    c.skip_ws();
    if (c.peek() == '[') {
      v.type = RawValue::Type::matrix;
      while (true) {
        v.mat.push_back(parse_number_list(c));
        c.skip_ws();
        if (c.peek() == ',') {
          c.take();
          c.skip_ws();
          continue;
        }
        if (c.peek() == ']') {
          c.take();
          break;
        }
        c.fail("expected ',' or ']' in matrix");
      }
      for (const auto& row : v.mat)
        if (row.size() != v.mat.front().size()) c.fail("ragged matrix rows");
    } else {
      v.type = RawValue::Type::list;
      if (c.peek() == ']') {
        c.take();
      } else {
        while (true) {
          const std::string tok = read_token(c);
          if (tok.empty()) c.fail("expected a number in list");
          v.list.push_back(parse_number_token(c, tok));
          c.skip_ws();
          if (c.peek() == ',') {
            c.take();
            continue;
          }
          if (c.peek() == ']') {
            c.take();
            break;
          }
          c.fail("expected ',' or ']' in list");
        }
      }
    }
    return v;
  }
  if (ch == '"') {
    c.take();
    v.type = RawValue::Type::string;
    while (true) {
      if (c.peek() == '\0') c.fail("unterminated string");
      const char q = c.take();
      if (q == '"') break;
      v.str.push_back(q);
    }
    return v;
  }
  const std::string tok = read_token(c);
  if (tok.empty()) c.fail("expected a value");
  if (tok == "true" || tok == "false") {
    v.type = RawValue::Type::boolean;
    v.b = tok == "true";
    return v;
  }
  const char first = tok[0];
  if (std::isdigit(static_cast<unsigned char>(first)) || first == '-' || first == '+' ||
      first == '.') {
    v.type = RawValue::Type::number;
    v.num = parse_number_token(c, tok);
    return v;
  }
  v.type = RawValue::Type::string;
  v.str = tok;
  return v;
}

std::vector<RawSection> parse_raw(const std::string& text) {
  std::vector<RawSection> sections;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comment (naive: '#' inside quotes is not supported in values)
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line.resize(i);
        break;
      }
    }
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(a, b - a + 1);

    if (body.front() == '[') {
      if (body.back() != ']')
        throw ConfigSyntaxError(lineno, static_cast<int>(body.size()),
                                "section header missing ']'");
      std::string name = body.substr(1, body.size() - 2);
      std::size_t s = name.find_first_not_of(" \t");
      std::size_t e = name.find_last_not_of(" \t");
      if (s == std::string::npos) throw ConfigSyntaxError(lineno, 2, "empty section name");
      RawSection sec;
      sec.name = name.substr(s, e - s + 1);
      sec.line = lineno;
      for (const RawSection& prev : sections)
        if (prev.name == sec.name)
          throw ConfigSyntaxError(lineno, 1, "duplicate section [" + sec.name + "]");
      sections.push_back(std::move(sec));
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigSyntaxError(lineno, 1, "expected 'key = value' or '[section]'");
    std::string key = body.substr(0, eq);
    const std::size_t ke = key.find_last_not_of(" \t");
    if (ke == std::string::npos) throw ConfigSyntaxError(lineno, 1, "missing key");
    key.resize(ke + 1);
    for (char ch : key)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
        throw ConfigSyntaxError(lineno, 1, "bad key character in '" + key + "'");
    if (sections.empty())
      throw ConfigSyntaxError(lineno, 1, "key '" + key + "' outside any [section]");

    const std::string rest = body.substr(eq + 1);
    Cursor c(rest, lineno);
    RawValue v = parse_value(c);
    if (!c.done()) c.fail("trailing characters after value");
    if (sections.back().kv.count(key))
      throw ConfigSyntaxError(lineno, 1, "duplicate key '" + key + "'");
    sections.back().kv.emplace(key, std::move(v));
  }
  return sections;
}

// ------------------------------------------------------------- typed access

class SectionReader {
 public:
  SectionReader(RawSection* sec, std::string path) : sec_(sec), path_(std::move(path)) {}

  bool has(const std::string& key) const { return sec_ && sec_->kv.count(key) > 0; }

  double number(const std::string& key, double def) {
    if (!has(key)) return def;
    const RawValue& v = use(key);
    if (v.type != RawValue::Type::number) fail(key, "expected a number");
    return v.num;
  }

  int integer(const std::string& key, int def) {
    const double v = number(key, def);
    if (v != std::floor(v)) fail(key, "expected an integer");
    return static_cast<int>(v);
  }

  long long integer64(const std::string& key, long long def) {
    const double v = number(key, static_cast<double>(def));
    if (v != std::floor(v)) fail(key, "expected an integer");
    return static_cast<long long>(v);
  }

  bool boolean(const std::string& key, bool def) {
    if (!has(key)) return def;
    const RawValue& v = use(key);
    if (v.type != RawValue::Type::boolean) fail(key, "expected true or false");
    return v.b;
  }

  std::string str(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    const RawValue& v = use(key);
    if (v.type != RawValue::Type::string) fail(key, "expected a string");
    return v.str;
  }

  std::vector<double> list(const std::string& key, std::vector<double> def) {
    if (!has(key)) return def;
    const RawValue& v = use(key);
    if (v.type != RawValue::Type::list) fail(key, "expected a list like [1, 2]");
    return v.list;
  }

  std::vector<int> int_list(const std::string& key, std::vector<int> def) {
    if (!has(key)) return def;
    const RawValue& v = use(key);
    if (v.type != RawValue::Type::list) fail(key, "expected a list like [64, 64]");
    std::vector<int> out;
    for (double d : v.list) {
      if (d != std::floor(d)) fail(key, "expected integers");
      out.push_back(static_cast<int>(d));
    }
    return out;
  }

  Mat matrix(const std::string& key) {
    if (!has(key)) fail(key, "required matrix missing");
    const RawValue& v = use(key);
    if (v.type != RawValue::Type::matrix) fail(key, "expected a matrix like [[1,0],[0,1]]");
    const int rows = static_cast<int>(v.mat.size());
    const int cols = rows > 0 ? static_cast<int>(v.mat[0].size()) : 0;
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        m(i, j) = v.mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
  }

  Vec vector(const std::string& key) {
    if (!has(key)) fail(key, "required vector missing");
    const RawValue& v = use(key);
    if (v.type != RawValue::Type::list) fail(key, "expected a vector like [1, 0]");
    Vec out(static_cast<Eigen::Index>(v.list.size()));
    for (std::size_t i = 0; i < v.list.size(); ++i)
      out[static_cast<Eigen::Index>(i)] = v.list[i];
    return out;
  }

  // number -> constant; string -> named scheduler reference
  ValueRef value_ref(const std::string& key, double def) {
    if (!has(key)) return ValueRef(def);
    const RawValue& v = use(key);
    if (v.type == RawValue::Type::number) return ValueRef(v.num);
    if (v.type == RawValue::Type::string) return ValueRef::ref(v.str);
    fail(key, "expected a number or a scheduler name");
  }

  void require(const std::string& key) {
    if (!has(key)) fail(key, "required key missing");
  }

  // every key must have been consumed
  void finish() {
    if (!sec_) return;
    for (const auto& [key, val] : sec_->kv)
      if (!used_.count(key))
        throw ConfigUnknownKeyError(path_ + "." + key, "unknown key");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(path_ + "." + key, msg);
  }

 private:
  const RawValue& use(const std::string& key) {
    used_.insert(key);
    return sec_->kv.at(key);
  }
  RawSection* sec_;
  std::string path_;
  std::set<std::string> used_;
};

// ----------------------------------------------------------------- lowering

EnvConfig lower_env(SectionReader& r) {
  const std::string kind = r.str("kind", "cartpole");
  if (kind == "pendulum") {
    PendulumEnvConfig c;
    c.params.g = r.number("g", c.params.g);
    c.params.m = r.number("m", c.params.m);
    c.params.l = r.number("l", c.params.l);
    c.params.dt = r.number("dt", c.params.dt);
    c.params.max_torque = r.number("max_torque", c.params.max_torque);
    c.params.max_speed = r.number("max_speed", c.params.max_speed);
    const std::string obs = r.str("obs", "trig");
    if (obs == "trig")
      c.obs_mode = PendulumObsMode::trig;
    else if (obs == "raw")
      c.obs_mode = PendulumObsMode::raw;
    else
      r.fail("obs", "expected trig or raw");
    c.max_episode_steps = r.integer("max_episode_steps", c.max_episode_steps);
    return c;
  }
  if (kind == "cartpole") {
    CartPoleEnvConfig c;
    c.params.g = r.number("g", c.params.g);
    c.params.cart_mass = r.number("cart_mass", c.params.cart_mass);
    c.params.pole_mass = r.number("pole_mass", c.params.pole_mass);
    c.params.pole_half_length = r.number("pole_half_length", c.params.pole_half_length);
    c.params.force = r.number("force", c.params.force);
    c.params.dt = r.number("dt", c.params.dt);
    c.params.x_limit = r.number("x_limit", c.params.x_limit);
    c.params.theta_limit =
        r.number("theta_limit_deg", 12.0) * 3.14159265358979323846 / 180.0;
    c.max_episode_steps = r.integer("max_episode_steps", c.max_episode_steps);
    return c;
  }
  if (kind == "lti") {
    LtiEnvConfig c;
    c.params.A = r.matrix("A");
    c.params.B = r.matrix("B");
    c.params.Q = r.matrix("Q");
    c.params.R = r.matrix("R");
    c.params.x0 = r.vector("x0");
    c.params.horizon = r.integer("horizon", c.params.horizon);
    c.params.u_max = r.number("u_max", c.params.u_max);
    return c;
  }
  r.fail("kind", "unknown environment '" + kind + "' (pendulum|cartpole|lti)");
}

PlannerModel lower_planner_model(SectionReader& r) {
  const std::string m = r.str("model", "true_env");
  if (m == "true_env") return PlannerModel::true_env;
  if (m == "learned") return PlannerModel::learned;
  r.fail("model", "expected true_env or learned");
}

AlgoConfig lower_algorithm(SectionReader& r, ExplorationConfig& exploration,
                           int& buffer_capacity) {
  const std::string kind = r.str("kind", "dqn");

  const std::string ex = r.str("exploration", "none");
  if (ex == "none")
    exploration.kind = ExplorationConfig::Kind::none;
  else if (ex == "epsilon_greedy")
    exploration.kind = ExplorationConfig::Kind::epsilon_greedy;
  else if (ex == "gaussian")
    exploration.kind = ExplorationConfig::Kind::gaussian;
  else
    r.fail("exploration", "expected none, epsilon_greedy, or gaussian");
  exploration.epsilon = r.value_ref("epsilon", 0.1);
  exploration.sigma = r.value_ref("sigma", 0.1);
  buffer_capacity = r.integer("buffer_capacity", 50000);

  if (kind == "dqn") {
    DqnAlgoConfig c;
    c.dqn.hidden = r.int_list("hidden", c.dqn.hidden);
    c.dqn.activation = activation_from_string(r.str("activation", "relu"));
    c.dqn.gamma = r.number("gamma", c.dqn.gamma);
    c.dqn.minibatch = r.integer("minibatch", c.dqn.minibatch);
    c.dqn.sync_interval = r.integer("sync_interval", c.dqn.sync_interval);
    c.lr = r.value_ref("lr", 1e-3);
    c.learning_starts = r.integer("learning_starts", c.learning_starts);
    return c;
  }
  if (kind == "mpc") {
    MpcAlgoConfig c;
    c.horizon = r.integer("horizon", c.horizon);
    c.n_candidates = r.integer("n_candidates", c.n_candidates);
    c.model = lower_planner_model(r);
    return c;
  }
  if (kind == "ilqr") {
    IlqrAlgoConfig c;
    c.options.horizon = r.integer("horizon", 0);  // 0 -> env max_episode_steps
    c.options.max_iterations = r.integer("max_iterations", c.options.max_iterations);
    c.options.mu_init = r.number("mu_init", c.options.mu_init);
    c.options.mu_min = r.number("mu_min", c.options.mu_min);
    c.options.mu_max = r.number("mu_max", c.options.mu_max);
    c.options.mu_scale = r.number("mu_scale", c.options.mu_scale);
    c.options.tol = r.number("tol", c.options.tol);
    c.options.line_search_steps = r.integer("line_search_steps", c.options.line_search_steps);
    c.model = lower_planner_model(r);
    return c;
  }
  r.fail("kind", "unknown algorithm '" + kind + "' (dqn|mpc|ilqr)");
}

DynamicsConfig lower_dynamics(SectionReader& r) {
  DynamicsConfig c;
  const std::string kind = r.str("kind", "mlp");
  if (kind == "linear")
    c.kind = DynamicsConfig::Kind::linear;
  else if (kind == "mlp")
    c.kind = DynamicsConfig::Kind::mlp;
  else
    r.fail("kind", "unknown dynamics model '" + kind + "' (linear|mlp)");
  c.hidden = r.int_list("hidden", c.hidden);
  c.activation = activation_from_string(r.str("activation", "tanh"));
  c.lr = r.number("lr", c.lr);
  c.epochs = r.integer("epochs", c.epochs);
  c.minibatch = r.integer("minibatch", c.minibatch);
  return c;
}

FlowSection lower_flow(SectionReader& r) {
  FlowSection f;
  const std::string type = r.str("type", "train_test");
  if (type == "dyna")
    f.dyna = true;
  else if (type != "train_test")
    r.fail("type", "unknown flow '" + type + "' (train_test|dyna)");

  TrainTestFlow& b = f.flow.base;
  b.samples_per_cycle = r.integer("samples_per_cycle", 50);
  b.train_steps_per_cycle = r.integer("train_steps_per_cycle", 50);
  b.test_every = r.integer("test_every", 5);
  b.n_test_episodes = r.integer("n_test_episodes", 3);

  const bool has_samples = r.has("max_real_samples");
  const bool has_cycles = r.has("max_cycles");
  if (has_samples && has_cycles)
    r.fail("max_real_samples", "set max_real_samples or max_cycles, not both");
  if (has_cycles) {
    b.stop.kind = StopCondition::Kind::max_cycles;
    b.stop.limit = r.integer64("max_cycles", 1);
  } else {
    b.stop.kind = StopCondition::Kind::max_real_samples;
    b.stop.limit = r.integer64("max_real_samples", 10000);
  }

  if (f.dyna) {
    f.flow.model_fit_every = r.integer("model_fit_every", 1);
    f.flow.k_sim = r.integer("k_sim", 4);
    f.flow.sim_rollout_len = r.integer("sim_rollout_len", 1);
    f.flow.sim_buffer_capacity = r.integer("sim_buffer_capacity", 100000);
  }
  return f;
}

MonitorSection lower_monitor(SectionReader& r) {
  MonitorSection m;
  const std::string level = r.str("log_level", "info");
  if (level == "info")
    m.log_level = MonitorSection::Level::info;
  else if (level == "warning")
    m.log_level = MonitorSection::Level::warning;
  else if (level == "error")
    m.log_level = MonitorSection::Level::error;
  else
    r.fail("log_level", "expected info, warning, or error");
  const std::string time = r.str("time", "logical");
  if (time == "wall")
    m.wall_time = true;
  else if (time != "logical")
    r.fail("time", "expected logical or wall");
  m.console = r.boolean("console", true);
  return m;
}

ParamScheduler lower_scheduler(SectionReader& r, const std::string& path) {
  ParamScheduler s;
  const std::string kind = r.str("kind", "linear");
  if (kind == "linear") {
    s.kind = ParamScheduler::Kind::linear;
    r.require("init");
    r.require("final");
    r.require("span");
    s.init = r.number("init", 0.0);
    s.final_value = r.number("final", 0.0);
    s.span = r.number("span", 1.0);
  } else if (kind == "exponential") {
    s.kind = ParamScheduler::Kind::exponential;
    r.require("init");
    r.require("rate");
    s.init = r.number("init", 0.0);
    s.rate = r.number("rate", 1.0);
  } else if (kind == "piecewise") {
    s.kind = ParamScheduler::Kind::piecewise;
    r.require("breakpoints");
    r.require("values");
    s.breakpoints = r.list("breakpoints", {});
    s.values = r.list("values", {});
  } else {
    r.fail("kind", "unknown scheduler kind '" + kind + "'");
  }
  s.over_key = r.str("over", GlobalStatus::kTotalRealSamples);
  s.validate(path);
  return s;
}

// ------------------------------------------------------------- validation

const std::set<std::string> kBuiltinCounters = {
    GlobalStatus::kTotalRealSamples, GlobalStatus::kTotalSimSamples,
    GlobalStatus::kTotalTrainSteps, GlobalStatus::kTotalTestEpisodes,
    GlobalStatus::kCycleIndex};

void check_ref(const ValueRef& ref, const SchedulerSet& schedulers, const std::string& path) {
  if (!ref.is_ref()) return;
  if (!schedulers.count(ref.scheduler))
    throw ConfigUnresolvedRefError(path, "scheduler '" + ref.scheduler + "' is not defined");
}

void cross_validate(const ExperimentConfig& cfg) {
  for (const auto& [name, sched] : cfg.schedulers) {
    if (!kBuiltinCounters.count(sched.over_key))
      throw ConfigUnresolvedRefError("scheduler " + name + ".over",
                                     "'" + sched.over_key + "' is not a status counter");
  }

  if (const auto* dqn = std::get_if<DqnAlgoConfig>(&cfg.algorithm)) {
    check_ref(dqn->lr, cfg.schedulers, "algorithm.lr");
    if (!std::holds_alternative<CartPoleEnvConfig>(cfg.env))
      throw ConfigIncompatibleError(
          "algorithm.kind", "dqn needs a discrete-action environment (env.kind = cartpole)");
    if (cfg.exploration.kind == ExplorationConfig::Kind::gaussian)
      throw ConfigIncompatibleError("algorithm.exploration",
                                    "gaussian noise needs a box action space");
  }
  if (std::holds_alternative<MpcAlgoConfig>(cfg.algorithm) ||
      std::holds_alternative<IlqrAlgoConfig>(cfg.algorithm)) {
    if (std::holds_alternative<CartPoleEnvConfig>(cfg.env))
      throw ConfigIncompatibleError(
          "algorithm.kind",
          "planners need a shaped stage cost (env.kind = pendulum or lti)");
  }
  if (std::holds_alternative<IlqrAlgoConfig>(cfg.algorithm)) {
    if (const auto* pend = std::get_if<PendulumEnvConfig>(&cfg.env)) {
      if (pend->obs_mode != PendulumObsMode::raw)
        throw ConfigIncompatibleError("algorithm.kind",
                                      "ilqr plans on raw states (set env.obs = raw)");
    }
  }

  PlannerModel model = PlannerModel::true_env;
  if (const auto* mpc = std::get_if<MpcAlgoConfig>(&cfg.algorithm)) model = mpc->model;
  if (const auto* ilqr = std::get_if<IlqrAlgoConfig>(&cfg.algorithm)) model = ilqr->model;
  if (model == PlannerModel::learned && !cfg.dynamics)
    throw ConfigIncompatibleError("algorithm.model",
                                  "learned model needs a [dynamics] section");
  if (model == PlannerModel::learned && !cfg.flow.dyna)
    throw ConfigIncompatibleError("algorithm.model",
                                  "learned model needs flow.type = dyna to be fitted");

  if (cfg.flow.dyna && !cfg.dynamics)
    throw ConfigIncompatibleError("flow.type", "dyna needs a [dynamics] section");
  if (cfg.dynamics && !cfg.flow.dyna && model != PlannerModel::learned)
    throw ConfigIncompatibleError("dynamics",
                                  "section present but nothing uses it (flow.type = dyna "
                                  "or algorithm.model = learned)");

  if (cfg.exploration.kind == ExplorationConfig::Kind::epsilon_greedy)
    check_ref(cfg.exploration.epsilon, cfg.schedulers, "algorithm.epsilon");
  if (cfg.exploration.kind == ExplorationConfig::Kind::gaussian)
    check_ref(cfg.exploration.sigma, cfg.schedulers, "algorithm.sigma");

  cfg.flow.dyna ? cfg.flow.flow.validate() : cfg.flow.flow.base.validate();

  // constructing the env validates its parameter ranges
  std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, PendulumEnvConfig>)
          PendulumEnv{e.params, e.obs_mode, e.max_episode_steps};
        else if constexpr (std::is_same_v<T, CartPoleEnvConfig>)
          CartPoleEnv{e.params, e.max_episode_steps};
        else
          LtiEnv{e.params};
      },
      cfg.env);
}

// ------------------------------------------------------------ serialization

std::string fmt_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_number(v[i]);
  }
  return out + "]";
}

std::string fmt_int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string fmt_vec(const Vec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_number(v[i]);
  }
  return out + "]";
}

std::string fmt_mat(const Mat& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += fmt_vec(m.row(i).transpose());
  }
  return out + "]";
}

std::string fmt_value_ref(const ValueRef& v) {
  if (v.is_ref()) return "\"" + v.scheduler + "\"";
  return fmt_number(v.constant);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  std::vector<RawSection> raw = parse_raw(text);

  auto find = [&](const std::string& name) -> RawSection* {
    for (RawSection& s : raw)
      if (s.name == name) return &s;
    return nullptr;
  };

  static const std::set<std::string> known = {"experiment", "env",  "algorithm",
                                              "dynamics",   "flow", "monitor"};
  for (const RawSection& s : raw) {
    if (known.count(s.name)) continue;
    if (s.name.rfind("scheduler ", 0) == 0) continue;
    throw ConfigUnknownKeyError(s.name, "unknown section");
  }

  ExperimentConfig cfg;
  {
    SectionReader r(find("experiment"), "experiment");
    cfg.experiment.name = r.str("name", "exp");
    const double seed = r.number("seed", 0.0);
    if (seed < 0 || seed != std::floor(seed)) r.fail("seed", "expected a non-negative integer");
    cfg.experiment.seed = static_cast<std::uint64_t>(seed);
    cfg.experiment.out_dir = r.str("out_dir", "");
    r.finish();
  }
  {
    SectionReader r(find("env"), "env");
    cfg.env = lower_env(r);
    r.finish();
  }
  {
    SectionReader r(find("algorithm"), "algorithm");
    cfg.algorithm = lower_algorithm(r, cfg.exploration, cfg.buffer_capacity);
    r.finish();
  }
  if (RawSection* dyn = find("dynamics")) {
    SectionReader r(dyn, "dynamics");
    cfg.dynamics = lower_dynamics(r);
    r.finish();
  }
  {
    SectionReader r(find("flow"), "flow");
    cfg.flow = lower_flow(r);
    r.finish();
  }
  {
    SectionReader r(find("monitor"), "monitor");
    cfg.monitor = lower_monitor(r);
    r.finish();
  }
  for (RawSection& s : raw) {
    if (s.name.rfind("scheduler ", 0) != 0) continue;
    const std::string name = s.name.substr(10);
    if (name.empty()) throw ConfigSyntaxError(s.line, 1, "scheduler section needs a name");
    if (cfg.schedulers.count(name))
      throw ConfigError("scheduler " + name, "duplicate scheduler");
    SectionReader r(&s, "scheduler " + name);
    cfg.schedulers[name] = lower_scheduler(r, "scheduler " + name);
    r.finish();
  }

  cross_validate(cfg);
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const char* ExperimentConfig::env_kind() const {
  if (std::holds_alternative<PendulumEnvConfig>(env)) return "pendulum";
  if (std::holds_alternative<CartPoleEnvConfig>(env)) return "cartpole";
  return "lti";
}

const char* ExperimentConfig::algorithm_kind() const {
  if (std::holds_alternative<DqnAlgoConfig>(algorithm)) return "dqn";
  if (std::holds_alternative<MpcAlgoConfig>(algorithm)) return "mpc";
  return "ilqr";
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream o;
  o << "[experiment]\n";
  o << "name = \"" << experiment.name << "\"\n";
  o << "seed = " << experiment.seed << "\n";
  if (!experiment.out_dir.empty()) o << "out_dir = \"" << experiment.out_dir << "\"\n";

  o << "\n[env]\n";
  o << "kind = \"" << env_kind() << "\"\n";
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, PendulumEnvConfig>) {
          o << "g = " << fmt_number(e.params.g) << "\n";
          o << "m = " << fmt_number(e.params.m) << "\n";
          o << "l = " << fmt_number(e.params.l) << "\n";
          o << "dt = " << fmt_number(e.params.dt) << "\n";
          o << "max_torque = " << fmt_number(e.params.max_torque) << "\n";
          o << "max_speed = " << fmt_number(e.params.max_speed) << "\n";
          o << "obs = \"" << (e.obs_mode == PendulumObsMode::trig ? "trig" : "raw") << "\"\n";
          o << "max_episode_steps = " << e.max_episode_steps << "\n";
        } else if constexpr (std::is_same_v<T, CartPoleEnvConfig>) {
          o << "g = " << fmt_number(e.params.g) << "\n";
          o << "cart_mass = " << fmt_number(e.params.cart_mass) << "\n";
          o << "pole_mass = " << fmt_number(e.params.pole_mass) << "\n";
          o << "pole_half_length = " << fmt_number(e.params.pole_half_length) << "\n";
          o << "force = " << fmt_number(e.params.force) << "\n";
          o << "dt = " << fmt_number(e.params.dt) << "\n";
          o << "x_limit = " << fmt_number(e.params.x_limit) << "\n";
          o << "theta_limit_deg = "
            << fmt_number(e.params.theta_limit * 180.0 / 3.14159265358979323846) << "\n";
          o << "max_episode_steps = " << e.max_episode_steps << "\n";
        } else {
          o << "A = " << fmt_mat(e.params.A) << "\n";
          o << "B = " << fmt_mat(e.params.B) << "\n";
          o << "Q = " << fmt_mat(e.params.Q) << "\n";
          o << "R = " << fmt_mat(e.params.R) << "\n";
          o << "x0 = " << fmt_vec(e.params.x0) << "\n";
          o << "horizon = " << e.params.horizon << "\n";
          o << "u_max = " << fmt_number(e.params.u_max) << "\n";
        }
      },
      env);

  o << "\n[algorithm]\n";
  o << "kind = \"" << algorithm_kind() << "\"\n";
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, DqnAlgoConfig>) {
          o << "hidden = " << fmt_int_list(a.dqn.hidden) << "\n";
          o << "activation = \"" << activation_name(a.dqn.activation) << "\"\n";
          o << "gamma = " << fmt_number(a.dqn.gamma) << "\n";
          o << "lr = " << fmt_value_ref(a.lr) << "\n";
          o << "minibatch = " << a.dqn.minibatch << "\n";
          o << "sync_interval = " << a.dqn.sync_interval << "\n";
          o << "learning_starts = " << a.learning_starts << "\n";
        } else if constexpr (std::is_same_v<T, MpcAlgoConfig>) {
          o << "horizon = " << a.horizon << "\n";
          o << "n_candidates = " << a.n_candidates << "\n";
          o << "model = \"" << (a.model == PlannerModel::true_env ? "true_env" : "learned")
            << "\"\n";
        } else {
          o << "horizon = " << a.options.horizon << "\n";
          o << "max_iterations = " << a.options.max_iterations << "\n";
          o << "mu_init = " << fmt_number(a.options.mu_init) << "\n";
          o << "mu_min = " << fmt_number(a.options.mu_min) << "\n";
          o << "mu_max = " << fmt_number(a.options.mu_max) << "\n";
          o << "mu_scale = " << fmt_number(a.options.mu_scale) << "\n";
          o << "tol = " << fmt_number(a.options.tol) << "\n";
          o << "line_search_steps = " << a.options.line_search_steps << "\n";
          o << "model = \"" << (a.model == PlannerModel::true_env ? "true_env" : "learned")
            << "\"\n";
        }
      },
      algorithm);
  switch (exploration.kind) {
    case ExplorationConfig::Kind::none:
      o << "exploration = \"none\"\n";
      break;
    case ExplorationConfig::Kind::epsilon_greedy:
      o << "exploration = \"epsilon_greedy\"\n";
      o << "epsilon = " << fmt_value_ref(exploration.epsilon) << "\n";
      break;
    case ExplorationConfig::Kind::gaussian:
      o << "exploration = \"gaussian\"\n";
      o << "sigma = " << fmt_value_ref(exploration.sigma) << "\n";
      break;
  }
  o << "buffer_capacity = " << buffer_capacity << "\n";

  if (dynamics) {
    o << "\n[dynamics]\n";
    o << "kind = \"" << (dynamics->kind == DynamicsConfig::Kind::linear ? "linear" : "mlp")
      << "\"\n";
    if (dynamics->kind == DynamicsConfig::Kind::mlp) {
      o << "hidden = " << fmt_int_list(dynamics->hidden) << "\n";
      o << "activation = \"" << activation_name(dynamics->activation) << "\"\n";
      o << "lr = " << fmt_number(dynamics->lr) << "\n";
      o << "epochs = " << dynamics->epochs << "\n";
      o << "minibatch = " << dynamics->minibatch << "\n";
    }
  }

  o << "\n[flow]\n";
  o << "type = \"" << (flow.dyna ? "dyna" : "train_test") << "\"\n";
  const TrainTestFlow& b = flow.flow.base;
  o << "samples_per_cycle = " << b.samples_per_cycle << "\n";
  o << "train_steps_per_cycle = " << b.train_steps_per_cycle << "\n";
  o << "test_every = " << b.test_every << "\n";
  o << "n_test_episodes = " << b.n_test_episodes << "\n";
  if (b.stop.kind == StopCondition::Kind::max_cycles)
    o << "max_cycles = " << b.stop.limit << "\n";
  else
    o << "max_real_samples = " << b.stop.limit << "\n";
  if (flow.dyna) {
    o << "model_fit_every = " << flow.flow.model_fit_every << "\n";
    o << "k_sim = " << flow.flow.k_sim << "\n";
    o << "sim_rollout_len = " << flow.flow.sim_rollout_len << "\n";
    o << "sim_buffer_capacity = " << flow.flow.sim_buffer_capacity << "\n";
  }

  o << "\n[monitor]\n";
  const char* level = monitor.log_level == MonitorSection::Level::info      ? "info"
                      : monitor.log_level == MonitorSection::Level::warning ? "warning"
                                                                            : "error";
  o << "log_level = \"" << level << "\"\n";
  o << "time = \"" << (monitor.wall_time ? "wall" : "logical") << "\"\n";
  o << "console = " << (monitor.console ? "true" : "false") << "\n";

  for (const auto& [name, s] : schedulers) {
    o << "\n[scheduler " << name << "]\n";
    switch (s.kind) {
      case ParamScheduler::Kind::linear:
        o << "kind = \"linear\"\n";
        o << "init = " << fmt_number(s.init) << "\n";
        o << "final = " << fmt_number(s.final_value) << "\n";
        o << "span = " << fmt_number(s.span) << "\n";
        break;
      case ParamScheduler::Kind::exponential:
        o << "kind = \"exponential\"\n";
        o << "init = " << fmt_number(s.init) << "\n";
        o << "rate = " << fmt_number(s.rate) << "\n";
        break;
      case ParamScheduler::Kind::piecewise:
        o << "kind = \"piecewise\"\n";
        o << "breakpoints = " << fmt_list(s.breakpoints) << "\n";
        o << "values = " << fmt_list(s.values) << "\n";
        break;
    }
    o << "over = \"" << s.over_key << "\"\n";
  }
  return o.str();
}

int ExperimentConfig::key_count() const {
  const std::string text = serialize();
  int n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.find('=') != std::string::npos) ++n;
  return n;
}

}  // namespace mbrl

#include "mbrl/dynamics/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mbrl/core/error.hpp"
#include "mbrl/fapprox/param_io.hpp"

namespace mbrl {
namespace {

void write_vec(std::ostream& out, const char* tag, const Vec& v) {
  out << tag;
  char buf[48];
  for (int i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%a", v[i]);
    out << ' ' << buf;
  }
  out << '\n';
}

Vec read_vec(std::istream& in, const std::string& tag, long long expect) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("model checkpoint: missing " + tag + " line");
  std::istringstream ss(line);
  std::string got;
  ss >> got;
  if (got != tag) throw IoError("model checkpoint: expected '" + tag + "', got '" + got + "'");
  std::vector<double> vals;
  std::string tok;
  while (ss >> tok) {
    char* end = nullptr;
    vals.push_back(std::strtod(tok.c_str(), &end));
    if (end == tok.c_str()) throw IoError("model checkpoint: bad number in " + tag);
  }
  if (expect >= 0 && static_cast<long long>(vals.size()) != expect)
    throw IoError("model checkpoint: wrong length for " + tag);
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

std::pair<int, int> read_header(std::istream& in, const std::string& want_kind) {
  std::string line;
  if (!std::getline(in, line) || line != "mbrl-model v1")
    throw IoError("model checkpoint: bad magic line");
  if (!std::getline(in, line)) throw IoError("model checkpoint: missing kind line");
  std::istringstream kind_line(line);
  std::string tag, kind;
  kind_line >> tag >> kind;
  if (tag != "kind") throw IoError("model checkpoint: expected kind line");
  if (!want_kind.empty() && kind != want_kind)
    throw IoError("model checkpoint: expected kind " + want_kind + ", got " + kind);
  int sd = 0, ad = 0;
  if (!std::getline(in, line)) throw IoError("model checkpoint: missing state_dim");
  std::istringstream(line) >> tag >> sd;
  if (!std::getline(in, line)) throw IoError("model checkpoint: missing action_dim");
  std::istringstream(line) >> tag >> ad;
  if (sd < 1 || ad < 1) throw IoError("model checkpoint: bad dimensions");
  return {sd, ad};
}

void write_header(std::ostream& out, const char* kind, int sd, int ad) {
  out << "mbrl-model v1\n"
      << "kind " << kind << '\n'
      << "state_dim " << sd << '\n'
      << "action_dim " << ad << '\n';
}

std::string peek_kind(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_model: cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "mbrl-model v1") throw IoError("load_model: bad magic line in " + path.string());
  std::getline(in, line);
  std::istringstream ss(line);
  std::string tag, kind;
  ss >> tag >> kind;
  if (tag != "kind") throw IoError("load_model: missing kind line in " + path.string());
  return kind;
}

}  // namespace

void save_model(const LinearDynamics& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_model: cannot open " + path.string());
  const int n = model.state_dim(), m = model.action_dim();
  write_header(out, "linear", n, m);
  for (int i = 0; i < n; ++i) write_vec(out, "A_row", model.A().row(i).transpose());
  for (int i = 0; i < n; ++i) write_vec(out, "B_row", model.B().row(i).transpose());
  write_vec(out, "c", model.c());
  if (!out) throw IoError("save_model: write failed for " + path.string());
}

void save_model(const MlpDynamics& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_model: cannot open " + path.string());
  write_header(out, "mlp", model.state_dim(), model.action_dim());
  write_vec(out, "in_mean", model.input_normalizer().mean);
  write_vec(out, "in_std", model.input_normalizer().std);
  write_vec(out, "delta_mean", model.delta_normalizer().mean);
  write_vec(out, "delta_std", model.delta_normalizer().std);
  write_mlp(model.net(), out);
  if (!out) throw IoError("save_model: write failed for " + path.string());
}

std::unique_ptr<DynamicsModel> load_model(const std::filesystem::path& path) {
  const std::string kind = peek_kind(path);
  std::ifstream in(path);
  if (!in) throw IoError("load_model: cannot open " + path.string());

  if (kind == "linear") {
    auto [n, m] = read_header(in, "linear");
    Mat A(n, n), B(n, m);
    for (int i = 0; i < n; ++i) A.row(i) = read_vec(in, "A_row", n).transpose();
    for (int i = 0; i < n; ++i) B.row(i) = read_vec(in, "B_row", m).transpose();
    Vec c = read_vec(in, "c", n);
    return std::make_unique<LinearDynamics>(std::move(A), std::move(B), std::move(c));
  }
  if (kind == "mlp") {
    auto [n, m] = read_header(in, "mlp");
    Normalizer in_norm(n + m), delta_norm(n);
    in_norm.mean = read_vec(in, "in_mean", n + m);
    in_norm.std = read_vec(in, "in_std", n + m);
    delta_norm.mean = read_vec(in, "delta_mean", n);
    delta_norm.std = read_vec(in, "delta_std", n);
    Mlp net = read_mlp(in, "load_model(" + path.string() + ")");
    if (net.input_dim() != n + m || net.output_dim() != n)
      throw IoError("load_model: net dimensions do not match header");
    RngStream dummy(0, 0);
    std::vector<int> hidden(net.sizes().begin() + 1, net.sizes().end() - 1);
    auto model = std::make_unique<MlpDynamics>(n, m, hidden, net.activation(), dummy);
    model->net().params() = net.params();
    model->set_normalizers(std::move(in_norm), std::move(delta_norm));
    return model;
  }
  throw IoError("load_model: unknown model kind '" + kind + "'");
}

}  // namespace mbrl

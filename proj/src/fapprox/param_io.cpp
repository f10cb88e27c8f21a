#include "mbrl/fapprox/param_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mbrl/core/error.hpp"

namespace mbrl {
namespace {

std::string hex_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

}  // namespace

void write_mlp(const Mlp& net, std::ostream& out) {
  out << "mbrl-mlp v1\n";
  out << "sizes";
  for (int d : net.sizes()) out << ' ' << d;
  out << '\n';
  out << "activation " << activation_name(net.activation()) << '\n';
  out << "params " << net.param_count() << '\n';
  for (double p : net.params()) out << hex_double(p) << '\n';
}

Mlp read_mlp(std::istream& in, const std::string& context) {
  std::string line;
  auto fail = [&](const std::string& msg) -> void {
    throw IoError(context + ": " + msg);
  };
  if (!std::getline(in, line) || line != "mbrl-mlp v1") fail("bad magic line");
  if (!std::getline(in, line)) fail("missing sizes line");
  std::istringstream sizes_line(line);
  std::string tag;
  sizes_line >> tag;
  if (tag != "sizes") fail("expected sizes line");
  std::vector<int> sizes;
  int d;
  while (sizes_line >> d) sizes.push_back(d);
  if (sizes.size() < 2) fail("need at least two layer sizes");
  if (!std::getline(in, line)) fail("missing activation line");
  std::istringstream act_line(line);
  std::string act_name;
  act_line >> tag >> act_name;
  if (tag != "activation") fail("expected activation line");
  Mlp net(sizes, activation_from_string(act_name));
  if (!std::getline(in, line)) fail("missing params line");
  std::istringstream count_line(line);
  long long count = -1;
  count_line >> tag >> count;
  if (tag != "params" || count != net.param_count()) fail("parameter count mismatch");
  for (long long i = 0; i < count; ++i) {
    if (!std::getline(in, line)) fail("truncated parameter list");
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) fail("unparseable parameter at line " + std::to_string(i));
    net.params()[static_cast<std::size_t>(i)] = v;
  }
  return net;
}

void save_mlp(const Mlp& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_mlp: cannot open " + path.string());
  write_mlp(net, out);
  if (!out) throw IoError("save_mlp: write failed for " + path.string());
}

Mlp load_mlp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_mlp: cannot open " + path.string());
  return read_mlp(in, "load_mlp(" + path.string() + ")");
}

}  // namespace mbrl

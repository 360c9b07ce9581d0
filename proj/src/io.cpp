#include "hardy/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hardy::io {

namespace {
constexpr const char* kLayout = "row-major (x,y,z,a,b,c); settings 0/1; outcome index 0 = +1, 1 = -1";
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0.0 so that exact zeros print uniformly
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string behavior_to_csv(const Behavior& b) {
  std::string out = "x,y,z,a,b,c,p\n";
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int a = 0; a < 2; ++a)
          for (int bb = 0; bb < 2; ++bb)
            for (int c = 0; c < 2; ++c) {
              auto sgn = [](int i) { return i == 0 ? "+1" : "-1"; };
              out += std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + "," + sgn(a) + "," +
                     sgn(bb) + "," + sgn(c) + "," + format_double(b(x, y, z, a, bb, c)) + "\n";
            }
  return out;
}

Behavior behavior_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,z,a,b,c,p", 0) != 0) {
    throw DomainError("behavior CSV must start with header x,y,z,a,b,c,p");
  }
  Behavior::Table t{};
  std::array<bool, Behavior::kSize> seen{};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string f[7];
    for (auto& field : f) {
      if (!std::getline(row, field, ',')) throw DomainError("short CSV row: " + line);
    }
    auto setting = [&](const std::string& s) {
      if (s != "0" && s != "1") throw DomainError("bad setting in row: " + line);
      return s == "1" ? 1 : 0;
    };
    auto outcome = [&](const std::string& s) { return index_of(outcome_from_sign(std::stoi(s))); };
    const auto idx = Behavior::index(setting(f[0]), setting(f[1]), setting(f[2]), outcome(f[3]), outcome(f[4]),
                                     outcome(f[5]));
    if (seen[idx]) throw DomainError("duplicate CSV row: " + line);
    seen[idx] = true;
    t[idx] = std::stod(f[6]);
  }
  for (bool s : seen)
    if (!s) throw DomainError("behavior CSV must contain all 64 rows");
  return Behavior(t);
}

std::string behavior_to_json(const Behavior& b) {
  std::string out = "{\"layout\": \"";
  out += kLayout;
  out += "\", \"p\": [";
  for (std::size_t i = 0; i < Behavior::kSize; ++i) {
    if (i) out += ", ";
    out += format_double(b.data()[i]);
  }
  out += "]}\n";
  return out;
}

Behavior behavior_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  const auto& arr = doc.at("p");
  if (!arr.is_array() || arr.size() != Behavior::kSize) {
    throw DomainError("behavior JSON needs a 64-element array \"p\"");
  }
  Behavior::Table t{};
  for (std::size_t i = 0; i < Behavior::kSize; ++i) t[i] = arr[i].get<double>();
  return Behavior(t);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_file(const std::string& path, std::string_view contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hardy::io

#include "dressed/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "dressed/units.hpp"

namespace dressed {

ConfigParseError::ConfigParseError(int line, std::string key, const std::string& message)
    : Error(ErrorCode::ConfigParse,
            line > 0 ? fmt::format("line {}, key '{}': {}", line, key, message)
                     : fmt::format("key '{}': {}", key, message)),
      line_(line),
      key_(std::move(key)) {}

namespace {

struct Entry {
  std::string section;  // "" for top level
  int block = -1;       // [[tuning]] block index
  std::string key;
  std::string value;
  int line = 0;
};

struct RawConfig {
  std::vector<Entry> entries;
  std::vector<int> block_lines;  // header line of each [[tuning]] block
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool ends_with_ci(const std::string& s, std::string_view suffix) {
  if (s.size() < suffix.size()) return false;
  return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                    [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

const std::vector<std::string>& known_keys(const std::string& section) {
  static const std::vector<std::string> top{"spin"};
  static const std::vector<std::string> stat{"omega0x", "omega0y", "omega0z"};
  static const std::vector<std::string> dress{"omega", "omega_d", "xi"};
  static const std::vector<std::string> tune{"axis", "amplitude", "harmonic", "phase"};
  static const std::vector<std::string> none;
  if (section.empty()) return top;
  if (section == "static") return stat;
  if (section == "dressing") return dress;
  if (section == "tuning") return tune;
  return none;
}

std::string dotted(const Entry& e) { return e.section.empty() ? e.key : e.section + "." + e.key; }

RawConfig read_raw(std::istream& in) {
  RawConfig raw;
  std::string section;
  int block = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(strip_comment(line));
    if (text.empty()) continue;
    if (text == "[[tuning]]") {
      section = "tuning";
      block = static_cast<int>(raw.block_lines.size());
      raw.block_lines.push_back(lineno);
      continue;
    }
    if (text.front() == '[') {
      if (text.back() != ']' || text.starts_with("[["))
        throw ConfigParseError(lineno, text, "malformed section header");
      section = trim(text.substr(1, text.size() - 2));
      block = -1;
      if (section != "static" && section != "dressing")
        throw ConfigParseError(lineno, section,
                               section == "tuning" ? "tuning blocks are written [[tuning]]"
                                                   : "unknown section");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigParseError(lineno, text, "expected key = value");
    Entry e{section, block, trim(text.substr(0, eq)), unquote(trim(text.substr(eq + 1))), lineno};
    if (e.key.empty()) throw ConfigParseError(lineno, text, "empty key");
    if (e.value.empty()) throw ConfigParseError(lineno, dotted(e), "empty value");
    const auto& keys = known_keys(section);
    if (std::find(keys.begin(), keys.end(), e.key) == keys.end())
      throw ConfigParseError(lineno, dotted(e), "unknown key");
    for (const auto& prev : raw.entries)
      if (prev.section == e.section && prev.block == e.block && prev.key == e.key)
        throw ConfigParseError(lineno, dotted(e), fmt::format("duplicate key (first set on line {})", prev.line));
    raw.entries.push_back(std::move(e));
  }
  return raw;
}

Entry* find_entry(RawConfig& raw, const std::string& section, int block, const std::string& key) {
  for (auto& e : raw.entries)
    if (e.section == section && e.block == block && e.key == key) return &e;
  return nullptr;
}

const Entry* find_entry(const RawConfig& raw, const std::string& section, int block,
                        const std::string& key) {
  return find_entry(const_cast<RawConfig&>(raw), section, block, key);
}

int block_for_axis(const RawConfig& raw, const std::string& axis) {
  for (const auto& e : raw.entries)
    if (e.section == "tuning" && e.key == "axis" && e.value == axis) return e.block;
  return -1;
}

void apply_override(RawConfig& raw, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigParseError(0, text, "override must be key=value");
  const std::string path = trim(text.substr(0, eq));
  const std::string value = unquote(trim(text.substr(eq + 1)));
  if (value.empty()) throw ConfigParseError(0, path, "empty override value");

  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);

  Entry e;
  e.value = value;
  if (parts.size() == 1) {
    e.key = parts[0];
  } else if (parts.size() == 2 && parts[0] != "tuning") {
    e.section = parts[0];
    e.key = parts[1];
  } else if (parts.size() == 3 && parts[0] == "tuning") {
    const std::string& axis = parts[1];
    if (axis != "x" && axis != "y" && axis != "z")
      throw ConfigParseError(0, path, "tuning overrides are tuning.<x|y|z>.key");
    e.section = "tuning";
    e.key = parts[2];
    e.block = block_for_axis(raw, axis);
    if (e.block < 0) {
      e.block = static_cast<int>(raw.block_lines.size());
      raw.block_lines.push_back(0);
      raw.entries.push_back({"tuning", e.block, "axis", axis, 0});
    }
  } else {
    throw ConfigParseError(0, path, "unrecognized override path");
  }
  if (e.section != "" && e.section != "static" && e.section != "dressing" && e.section != "tuning")
    throw ConfigParseError(0, path, "unknown section");
  const auto& keys = known_keys(e.section);
  if (std::find(keys.begin(), keys.end(), e.key) == keys.end())
    throw ConfigParseError(0, path, "unknown key");

  if (Entry* existing = find_entry(raw, e.section, e.block, e.key)) {
    existing->value = e.value;
    existing->line = 0;
  } else {
    raw.entries.push_back(std::move(e));
  }
}

double frequency_of(const Entry& e) {
  try {
    return parse_frequency(e.value);
  } catch (const Error& err) {
    throw ConfigParseError(e.line, dotted(e), err.what());
  }
}

DriveConfiguration build(const RawConfig& raw) {
  DriveConfiguration c;
  if (const Entry* e = find_entry(raw, "", -1, "spin")) {
    if (e->value == "half" || e->value == "1/2")
      c.spin = Spin::half;
    else if (e->value == "one" || e->value == "1")
      c.spin = Spin::one;
    else
      throw ConfigParseError(e->line, "spin", "expected half or one");
  }
  if (const Entry* e = find_entry(raw, "static", -1, "omega0x")) c.static_field.omega0x = frequency_of(*e);
  if (const Entry* e = find_entry(raw, "static", -1, "omega0y")) c.static_field.omega0y = frequency_of(*e);
  if (const Entry* e = find_entry(raw, "static", -1, "omega0z")) c.static_field.omega0z = frequency_of(*e);

  const Entry* omega = find_entry(raw, "dressing", -1, "omega");
  const Entry* omega_d = find_entry(raw, "dressing", -1, "omega_d");
  const Entry* xi = find_entry(raw, "dressing", -1, "xi");
  if (omega) c.dressing.omega = frequency_of(*omega);
  if (omega_d && xi)
    throw ConfigParseError(xi->line, "dressing.xi", "give either omega_d or xi, not both");
  if (omega_d) c.dressing.omega_d = frequency_of(*omega_d);
  if (xi) {
    auto v = to_double(xi->value);
    if (!v) throw ConfigParseError(xi->line, "dressing.xi", "not a number");
    c.dressing.omega_d = *v * c.dressing.omega;
    if (*v < 0.0) throw ConfigParseError(xi->line, "dressing.xi", "must be >= 0");
  }

  for (int b = 0; b < static_cast<int>(raw.block_lines.size()); ++b) {
    TuningComponent t;
    const Entry* axis = find_entry(raw, "tuning", b, "axis");
    if (!axis) throw ConfigParseError(raw.block_lines[b], "tuning.axis", "missing axis in [[tuning]] block");
    if (axis->value == "x")
      t.axis = Axis::x;
    else if (axis->value == "y")
      t.axis = Axis::y;
    else if (axis->value == "z")
      t.axis = Axis::z;
    else
      throw ConfigParseError(axis->line, "tuning.axis", "expected x, y or z");
    if (const Entry* e = find_entry(raw, "tuning", b, "amplitude")) t.amplitude = frequency_of(*e);
    if (const Entry* e = find_entry(raw, "tuning", b, "harmonic")) {
      int h = 0;
      auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), h);
      if (ec != std::errc() || ptr != e->value.data() + e->value.size())
        throw ConfigParseError(e->line, "tuning.harmonic", "expected an integer");
      t.harmonic = h;
    }
    if (const Entry* e = find_entry(raw, "tuning", b, "phase")) {
      try {
        t.phase = parse_angle(e->value);
      } catch (const Error& err) {
        throw ConfigParseError(e->line, "tuning.phase", err.what());
      }
    }
    c.tuning.push_back(t);
  }
  return c;
}

// Line of the entry a violation refers to ("tuning.y.harmonic" etc).
int line_of(const RawConfig& raw, const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    const Entry* e = find_entry(raw, "", -1, key);
    return e ? e->line : 0;
  }
  const std::string section = key.substr(0, dot);
  std::string rest = key.substr(dot + 1);
  if (section == "tuning") {
    const auto dot2 = rest.find('.');
    const int b = block_for_axis(raw, rest.substr(0, dot2));
    if (b < 0) return 0;
    const Entry* e = find_entry(raw, "tuning", b, rest.substr(dot2 + 1));
    return e ? e->line : raw.block_lines[b];
  }
  const Entry* e = find_entry(raw, section, -1, rest);
  if (!e && section == "dressing" && rest == "omega_d") e = find_entry(raw, section, -1, "xi");
  return e ? e->line : 0;
}

}  // namespace

double parse_frequency(const std::string& raw_text) {
  std::string text = trim(raw_text);
  double scale = units::khz_to_rad(1.0);
  if (ends_with_ci(text, "khz")) {
    text = trim(text.substr(0, text.size() - 3));
  } else if (ends_with_ci(text, "hz")) {
    text = trim(text.substr(0, text.size() - 2));
    scale = units::khz_to_rad(1e-3);
  }
  auto v = to_double(text);
  if (!v) throw Error(ErrorCode::ConfigParse, fmt::format("'{}' is not a frequency", raw_text));
  return *v * scale;
}

double parse_angle(const std::string& raw_text) {
  std::string text = trim(raw_text);
  bool degrees = false;
  if (ends_with_ci(text, "deg")) {
    text = trim(text.substr(0, text.size() - 3));
    degrees = true;
  } else if (ends_with_ci(text, "rad")) {
    text = trim(text.substr(0, text.size() - 3));
  }
  auto v = to_double(text);
  if (!v) throw Error(ErrorCode::ConfigParse, fmt::format("'{}' is not an angle", raw_text));
  return degrees ? units::deg_to_rad(*v) : *v;
}

DriveConfiguration parse_config(std::istream& input, const std::vector<std::string>& overrides) {
  RawConfig raw = read_raw(input);
  for (const auto& o : overrides) apply_override(raw, o);
  DriveConfiguration config = build(raw);
  const auto violations = check(config);
  if (!violations.empty()) {
    std::string message;
    for (const auto& v : violations) {
      if (!message.empty()) message += "; ";
      message += fmt::format("{}: {}", to_string(v.code), v.detail);
    }
    throw ConfigParseError(line_of(raw, violations.front().key), violations.front().key, message);
  }
  return validate(config);
}

DriveConfiguration load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError(0, path.string(), "cannot open configuration file");
  return parse_config(in, overrides);
}

std::string write_config(const DriveConfiguration& c) {
  using units::rad_to_khz;
  std::string out = fmt::format("spin = {}\n\n", to_string(c.spin));
  out += fmt::format("[static]\nomega0x = {:.17g}\nomega0y = {:.17g}\nomega0z = {:.17g}\n\n",
                     rad_to_khz(c.static_field.omega0x), rad_to_khz(c.static_field.omega0y),
                     rad_to_khz(c.static_field.omega0z));
  out += fmt::format("[dressing]\nomega = {:.17g}\nomega_d = {:.17g}\n", rad_to_khz(c.dressing.omega),
                     rad_to_khz(c.dressing.omega_d));
  for (const auto& t : c.tuning) {
    out += fmt::format("\n[[tuning]]\naxis = {}\namplitude = {:.17g}\nharmonic = {}\nphase = {:.17g}rad\n",
                       to_string(t.axis), rad_to_khz(t.amplitude), t.harmonic, t.phase);
  }
  return out;
}

}  // namespace dressed

#include "asopf/case_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace asopf {

namespace {

// MATPOWER column positions (0-based) used by DC-OPF.
constexpr int kBusType = 1;
constexpr int kBusPd = 2;
constexpr int kGenBus = 0;
constexpr int kGenStatus = 7;
constexpr int kGenPmax = 8;
constexpr int kGenPmin = 9;
constexpr int kBranchFrom = 0;
constexpr int kBranchTo = 1;
constexpr int kBranchX = 3;
constexpr int kBranchRateA = 5;
constexpr int kBranchTap = 8;
constexpr int kBranchStatus = 10;

constexpr int kBusRefType = 3;

struct Token {
  std::string text;
  int line;
  int column;
};

// Strips % comments, keeping line structure so diagnostics can name lines.
std::string strip_comments(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_comment = false;
  for (char c : text) {
    if (c == '%') in_comment = true;
    if (c == '\n') in_comment = false;
    out.push_back(in_comment ? ' ' : c);
  }
  return out;
}

double parse_number(const Token& tok) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("NonNumericToken: '" + tok.text + "' at line " +
                     std::to_string(tok.line) + ", column " + std::to_string(tok.column));
  }
  return value;
}

// Finds "mpc.<name> = [ ... ];" and returns the bracketed body, or empty.
bool extract_matrix(const std::string& text, const std::string& name, std::string& body,
                    int& start_line) {
  const std::string key = "mpc." + name;
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    std::size_t p = pos + key.size();
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    if (p >= text.size() || text[p] != '=') {
      pos += key.size();
      continue;
    }
    ++p;
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    if (p >= text.size() || text[p] != '[') {
      pos += key.size();
      continue;
    }
    std::size_t close = text.find(']', p);
    if (close == std::string::npos) {
      throw ParseError("MalformedRow: unterminated matrix mpc." + name);
    }
    body = text.substr(p + 1, close - p - 1);
    start_line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + p, '\n'));
    return true;
  }
  return false;
}

// Splits a matrix body into rows. Rows end at ';' or at a newline that already
// carries tokens (PGLib rows always end with ';', but plain newlines occur in
// the wild).
std::vector<std::vector<Token>> tokenize_rows(const std::string& body, int first_line) {
  std::vector<std::vector<Token>> rows;
  std::vector<Token> current;
  int line = first_line;
  int column = 1;
  std::string tok;
  int tok_col = 1;

  auto flush_token = [&]() {
    if (!tok.empty()) {
      current.push_back(Token{tok, line, tok_col});
      tok.clear();
    }
  };
  auto flush_row = [&]() {
    flush_token();
    if (!current.empty()) {
      rows.push_back(std::move(current));
      current.clear();
    }
  };

  for (char c : body) {
    if (c == '\n') {
      flush_row();
      ++line;
      column = 1;
      continue;
    }
    if (c == ';' || c == ',') {
      if (c == ',') {
        flush_token();
      } else {
        flush_row();
      }
      ++column;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_token();
      ++column;
      continue;
    }
    if (tok.empty()) tok_col = column;
    tok.push_back(c);
    ++column;
  }
  flush_row();
  return rows;
}

std::vector<std::vector<double>> parse_table(const std::string& text, const std::string& name,
                                             std::size_t min_columns) {
  std::string body;
  int first_line = 0;
  if (!extract_matrix(text, name, body, first_line)) {
    throw ParseError("MissingTable: mpc." + name);
  }
  std::vector<std::vector<double>> table;
  for (const auto& row_tokens : tokenize_rows(body, first_line)) {
    if (row_tokens.size() < min_columns) {
      throw ParseError("MalformedRow: mpc." + name + " row at line " +
                       std::to_string(row_tokens.front().line) + " has " +
                       std::to_string(row_tokens.size()) + " columns, expected >= " +
                       std::to_string(min_columns));
    }
    std::vector<double> row;
    row.reserve(row_tokens.size());
    for (const auto& t : row_tokens) row.push_back(parse_number(t));
    table.push_back(std::move(row));
  }
  if (table.empty()) {
    throw ParseError("MissingTable: mpc." + name + " is empty");
  }
  return table;
}

std::string parse_case_name(const std::string& text) {
  std::size_t pos = text.find("function");
  if (pos == std::string::npos) return "unnamed";
  std::size_t eq = text.find('=', pos);
  if (eq == std::string::npos) return "unnamed";
  std::size_t start = eq + 1;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  std::size_t end = start;
  while (end < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) {
    ++end;
  }
  return end > start ? text.substr(start, end - start) : "unnamed";
}

double parse_base_mva(const std::string& text) {
  const std::string key = "mpc.baseMVA";
  std::size_t pos = text.find(key);
  if (pos == std::string::npos) {
    throw ParseError("MissingTable: mpc.baseMVA");
  }
  std::size_t eq = text.find('=', pos);
  if (eq == std::string::npos) {
    throw ParseError("MalformedRow: mpc.baseMVA");
  }
  std::size_t start = eq + 1;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  std::size_t end = start;
  while (end < text.size() && text[end] != ';' && text[end] != '\n') ++end;
  std::string num = text.substr(start, end - start);
  while (!num.empty() && std::isspace(static_cast<unsigned char>(num.back()))) num.pop_back();
  const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + start, '\n'));
  return parse_number(Token{num, line, 1});
}

// Linear cost coefficient in $/MWh from a gencost row.
double linear_cost_coefficient(const std::vector<double>& row) {
  const int model = static_cast<int>(row[0]);
  const int n = static_cast<int>(row[3]);
  if (model == 2) {
    // Polynomial, coefficients in descending power ending at the constant.
    if (n < 2) return 0.0;
    const std::size_t idx = 4 + static_cast<std::size_t>(n) - 2;
    return idx < row.size() ? row[idx] : 0.0;
  }
  if (model == 1) {
    // Piecewise linear: slope of the first segment.
    if (n < 2 || row.size() < 8) return 0.0;
    const double x0 = row[4], y0 = row[5], x1 = row[6], y1 = row[7];
    return x1 > x0 ? (y1 - y0) / (x1 - x0) : 0.0;
  }
  return 0.0;
}

}  // namespace

std::vector<int> Network::load_buses() const {
  std::vector<int> out;
  for (int i = 0; i < n_bus(); ++i) {
    if (buses[i].is_load) out.push_back(i);
  }
  return out;
}

double Network::total_demand() const {
  double d = 0.0;
  for (const auto& b : buses) d += b.demand;
  return d;
}

RawCase parse_case(const std::string& text) {
  const std::string clean = strip_comments(text);
  RawCase raw;
  raw.case_name = parse_case_name(clean);
  raw.base_mva = parse_base_mva(clean);
  if (raw.base_mva <= 0.0) {
    throw ParseError("MalformedRow: baseMVA must be positive");
  }
  raw.bus_table = parse_table(clean, "bus", 13);
  raw.gen_table = parse_table(clean, "gen", 21);
  raw.branch_table = parse_table(clean, "branch", 13);
  raw.gencost_table = parse_table(clean, "gencost", 4);
  return raw;
}

RawCase parse_case_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open case file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_case(ss.str());
}

std::string serialize_case(const RawCase& raw) {
  std::ostringstream out;
  out.precision(17);
  out << "function mpc = " << raw.case_name << "\n";
  out << "mpc.version = '2';\n";
  out << "mpc.baseMVA = " << raw.base_mva << ";\n";
  auto table = [&out](const char* name, const std::vector<std::vector<double>>& rows) {
    out << "mpc." << name << " = [\n";
    for (const auto& row : rows) {
      out << "\t";
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << "\t";
        out << row[i];
      }
      out << ";\n";
    }
    out << "];\n";
  };
  table("bus", raw.bus_table);
  table("gen", raw.gen_table);
  table("branch", raw.branch_table);
  table("gencost", raw.gencost_table);
  return out.str();
}

Network build_network(const RawCase& raw) {
  Network net;
  net.case_name = raw.case_name;
  net.base_mva = raw.base_mva;

  std::unordered_map<int, int> bus_index;
  net.buses.reserve(raw.bus_table.size());
  net.slack_bus = -1;
  for (const auto& row : raw.bus_table) {
    Bus bus;
    bus.id = static_cast<int>(row[0]);
    bus.demand = row[kBusPd] / net.base_mva;
    bus.is_load = bus.demand > 0.0;
    const int idx = static_cast<int>(net.buses.size());
    if (!bus_index.emplace(bus.id, idx).second) {
      throw ModelError("DuplicateBus: bus id " + std::to_string(bus.id));
    }
    if (static_cast<int>(row[kBusType]) == kBusRefType && net.slack_bus < 0) {
      net.slack_bus = idx;
    }
    net.buses.push_back(bus);
  }
  if (net.slack_bus < 0) {
    throw ModelError("NoReferenceBus: no type-3 bus in case " + raw.case_name);
  }

  auto lookup_bus = [&bus_index](double id_raw, const char* what) {
    const int id = static_cast<int>(id_raw);
    auto it = bus_index.find(id);
    if (it == bus_index.end()) {
      throw ModelError(std::string("UnknownBus: ") + what + " references bus " +
                       std::to_string(id));
    }
    return it->second;
  };

  for (std::size_t i = 0; i < raw.gen_table.size(); ++i) {
    const auto& row = raw.gen_table[i];
    if (row[kGenStatus] <= 0.0) continue;
    Generator gen;
    gen.bus = lookup_bus(row[kGenBus], "generator");
    gen.p_max = row[kGenPmax] / net.base_mva;
    gen.p_min = row[kGenPmin] / net.base_mva;
    if (i < raw.gencost_table.size()) {
      // $/MWh * MW/p.u. = $/p.u.-h
      gen.cost = linear_cost_coefficient(raw.gencost_table[i]) * net.base_mva;
    }
    net.generators.push_back(gen);
  }

  for (std::size_t i = 0; i < raw.branch_table.size(); ++i) {
    const auto& row = raw.branch_table[i];
    if (row[kBranchStatus] == 0.0) continue;
    Branch br;
    br.from = lookup_bus(row[kBranchFrom], "branch");
    br.to = lookup_bus(row[kBranchTo], "branch");
    const double x = row[kBranchX];
    if (x <= 0.0) {
      throw ModelError("NonpositiveReactance: branch row " + std::to_string(i + 1) +
                       " has x = " + std::to_string(x));
    }
    const double tap = row[kBranchTap] == 0.0 ? 1.0 : row[kBranchTap];
    br.susceptance = 1.0 / (x * tap);
    const double rate = row[kBranchRateA];
    br.f_max = rate > 0.0 ? rate / net.base_mva : std::numeric_limits<double>::infinity();
    net.branches.push_back(br);
  }

  // Connectivity over in-service branches (union-find).
  std::vector<int> parent(net.buses.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& br : net.branches) {
    parent[find(br.from)] = find(br.to);
  }
  const int root = find(net.slack_bus);
  for (int i = 0; i < net.n_bus(); ++i) {
    if (find(i) != root) {
      throw ModelError("DisconnectedNetwork: bus " + std::to_string(net.buses[i].id) +
                       " is not connected to the reference bus");
    }
  }
  return net;
}

std::vector<Diagnostic> validate(const Network& net) {
  std::vector<Diagnostic> out;
  for (int g = 0; g < net.n_gen(); ++g) {
    const auto& gen = net.generators[g];
    if (gen.p_min > gen.p_max) {
      out.push_back({"BoundsInverted", "generator " + std::to_string(g) + " has p_min > p_max", g});
    }
    if (gen.bus < 0 || gen.bus >= net.n_bus()) {
      out.push_back({"InvalidBusIndex", "generator " + std::to_string(g), g});
    }
  }
  for (int l = 0; l < net.n_branch(); ++l) {
    const auto& br = net.branches[l];
    if (!(br.f_max > 0.0)) {
      out.push_back({"NonpositiveRating", "branch " + std::to_string(l), l});
    }
    if (br.from < 0 || br.from >= net.n_bus() || br.to < 0 || br.to >= net.n_bus()) {
      out.push_back({"InvalidBusIndex", "branch " + std::to_string(l), l});
    }
  }
  double cap = 0.0;
  for (const auto& gen : net.generators) cap += gen.p_max;
  if (cap < net.total_demand()) {
    out.push_back({"InsufficientCapacity",
                   "total p_max < total demand (" + std::to_string(cap) + " < " +
                       std::to_string(net.total_demand()) + " p.u.)",
                   -1});
  }
  return out;
}

}  // namespace asopf

#include "divmbest/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace divmbest {

std::string format_real(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

DiversityMeasure DiversitySpec::measure() const {
  switch (kind) {
    case DiversityKind::hamming:
      return DiversityMeasure::hamming(M);
    case DiversityKind::linear:
      return DiversityMeasure::power(M, 1.0);
    case DiversityKind::power:
      return DiversityMeasure::power(M, p);
    case DiversityKind::custom:
      return DiversityMeasure::custom(values);
  }
  throw Error(ErrorCode::invalid_input, "unknown diversity kind");
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-comment, non-blank line split into tokens; false at EOF.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      tokens.clear();
      std::istringstream fields(line);
      std::string tok;
      while (fields >> tok) tokens.push_back(tok);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse, "line " + std::to_string(line_no_) + ": " + what);
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

template <typename T>
T parse_number(const LineReader& reader, const std::string& token) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto result = std::from_chars(token.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    reader.fail("malformed number '" + token + "'");
  }
  return value;
}

void expect_section(LineReader& reader, std::vector<std::string>& tokens,
                    std::string_view name) {
  if (!reader.next(tokens)) {
    throw Error(ErrorCode::parse,
                "unexpected end of file: missing section '" + std::string(name) + "'");
  }
  if (tokens.size() != 1 || tokens[0] != name) {
    reader.fail("expected section '" + std::string(name) + "'");
  }
}

DiversitySpec parse_diversity(const LineReader& reader, const std::vector<std::string>& t) {
  if (t.size() < 3) reader.fail("diversity needs a kind and M");
  DiversitySpec spec;
  spec.M = parse_number<int>(reader, t[2]);
  if (spec.M < 1) reader.fail("diversity M must be at least 1");
  const std::string& kind = t[1];
  if (kind == "hamming" || kind == "linear") {
    if (t.size() != 3) reader.fail("unexpected tokens after " + kind + " diversity");
    spec.kind = kind == "hamming" ? DiversityKind::hamming : DiversityKind::linear;
  } else if (kind == "power") {
    if (t.size() != 4) reader.fail("power diversity needs exactly one exponent");
    spec.kind = DiversityKind::power;
    spec.p = parse_number<double>(reader, t[3]);
  } else if (kind == "custom") {
    if (t.size() != static_cast<std::size_t>(spec.M) + 4) {
      reader.fail("custom diversity needs M+1 values");
    }
    spec.kind = DiversityKind::custom;
    for (std::size_t i = 3; i < t.size(); ++i) spec.values.push_back(parse_number<double>(reader, t[i]));
  } else {
    reader.fail("unknown diversity kind '" + kind + "'");
  }
  return spec;
}

}  // namespace

InstanceFile read_instance(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string> t;
  if (!reader.next(t)) throw Error(ErrorCode::parse, "empty instance file");
  if (t.size() != 2 || t[0] != "divmbest-instance") reader.fail("missing format header");
  if (parse_number<int>(reader, t[1]) != 1) reader.fail("unsupported format version " + t[1]);

  long long nodes = -1;
  long long edges = -1;
  double scale = kDefaultScale;
  InstanceFile file;

  // Header keys until the unary section.
  for (;;) {
    if (!reader.next(t)) {
      throw Error(ErrorCode::parse, "unexpected end of file: missing section 'unary'");
    }
    const std::string& key = t[0];
    if (key == "unary") {
      if (t.size() != 1) reader.fail("unexpected tokens after 'unary'");
      break;
    }
    if (key == "nodes" && t.size() == 2) {
      nodes = parse_number<long long>(reader, t[1]);
    } else if (key == "edges" && t.size() == 2) {
      edges = parse_number<long long>(reader, t[1]);
    } else if (key == "scale" && t.size() == 2) {
      scale = parse_number<double>(reader, t[1]);
    } else if (key == "grid" && t.size() == 3) {
      file.grid = GridDims{parse_number<int>(reader, t[1]), parse_number<int>(reader, t[2])};
    } else if (key == "diversity") {
      file.diversity = parse_diversity(reader, t);
    } else if (key == "lambda" && t.size() == 2) {
      file.lambda = parse_number<double>(reader, t[1]);
    } else {
      reader.fail("unknown or malformed header line '" + key + "'");
    }
  }
  if (nodes < 1) reader.fail("header lacks a positive 'nodes' count");
  if (edges < 0) reader.fail("header lacks an 'edges' count");
  if (file.grid && static_cast<long long>(file.grid->rows) * file.grid->cols != nodes) {
    reader.fail("grid dimensions do not match node count");
  }

  std::vector<UnaryTerm> unary;
  unary.reserve(static_cast<std::size_t>(nodes));
  for (long long v = 0; v < nodes; ++v) {
    if (!reader.next(t)) {
      throw Error(ErrorCode::parse, "unexpected end of file in section 'unary' (expected " +
                                        std::to_string(nodes) + " records, got " +
                                        std::to_string(v) + ")");
    }
    if (t.size() != 3) reader.fail("unary record needs 3 fields");
    if (parse_number<long long>(reader, t[0]) != v) reader.fail("unary records must be in node order");
    unary.push_back({parse_number<double>(reader, t[1]), parse_number<double>(reader, t[2])});
  }
  expect_section(reader, t, "pairwise");
  std::vector<PairwiseTerm> pairwise;
  pairwise.reserve(static_cast<std::size_t>(edges));
  for (long long e = 0; e < edges; ++e) {
    if (!reader.next(t)) {
      throw Error(ErrorCode::parse, "unexpected end of file in section 'pairwise' (expected " +
                                        std::to_string(edges) + " records, got " +
                                        std::to_string(e) + ")");
    }
    if (t.size() != 6) reader.fail("pairwise record needs 6 fields");
    pairwise.push_back({parse_number<NodeId>(reader, t[0]), parse_number<NodeId>(reader, t[1]),
                        parse_number<double>(reader, t[2]), parse_number<double>(reader, t[3]),
                        parse_number<double>(reader, t[4]), parse_number<double>(reader, t[5])});
  }
  expect_section(reader, t, "end");
  if (reader.next(t)) reader.fail("content after 'end'");

  try {
    file.model = EnergyModel(static_cast<NodeId>(nodes), std::move(unary), std::move(pairwise), scale);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, std::string("invalid model: ") + e.what());
  }
  file.submodularity = check_submodular(file.model);
  return file;
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open " + path.string());
  return read_instance(in);
}

void write_instance(std::ostream& out, const InstanceFile& instance) {
  const EnergyModel& model = instance.model;
  out << "divmbest-instance 1\n";
  out << "nodes " << model.node_count() << '\n';
  out << "edges " << model.edges().size() << '\n';
  out << "scale " << format_real(model.scale()) << '\n';
  if (instance.grid) out << "grid " << instance.grid->rows << ' ' << instance.grid->cols << '\n';
  if (instance.diversity) {
    const auto& d = *instance.diversity;
    out << "diversity ";
    switch (d.kind) {
      case DiversityKind::hamming:
        out << "hamming " << d.M;
        break;
      case DiversityKind::linear:
        out << "linear " << d.M;
        break;
      case DiversityKind::power:
        out << "power " << d.M << ' ' << format_real(d.p);
        break;
      case DiversityKind::custom:
        out << "custom " << d.M;
        for (double v : d.values) out << ' ' << format_real(v);
        break;
    }
    out << '\n';
  }
  if (instance.lambda) out << "lambda " << format_real(*instance.lambda) << '\n';
  out << "unary\n";
  for (std::size_t v = 0; v < model.unary().size(); ++v) {
    const auto& u = model.unary()[v];
    out << v << ' ' << format_real(u.cost0) << ' ' << format_real(u.cost1) << '\n';
  }
  out << "pairwise\n";
  for (const auto& e : model.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_real(e.cost00) << ' ' << format_real(e.cost01)
        << ' ' << format_real(e.cost10) << ' ' << format_real(e.cost11) << '\n';
  }
  out << "end\n";
}

void write_instance(const std::filesystem::path& path, const InstanceFile& instance) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + path.string());
  write_instance(out, instance);
}

void write_labelings(std::ostream& out, std::span<const Labeling> tuple) {
  for (const auto& y : tuple) {
    std::string row(y.size(), '0');
    for (std::size_t v = 0; v < y.size(); ++v) row[v] = y[v] ? '1' : '0';
    out << row << '\n';
  }
}

LabelingTuple read_labelings(std::istream& in) {
  LabelingTuple tuple;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::uint8_t> bits;
    for (char c : line) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected 0/1");
      }
      bits.push_back(c == '1');
    }
    if (!tuple.empty() && bits.size() != tuple.front().size()) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": length mismatch");
    }
    tuple.emplace_back(std::move(bits));
  }
  return tuple;
}

LabelingTuple read_labelings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open " + path.string());
  return read_labelings(in);
}

void write_pgm(std::ostream& out, const Labeling& y, GridDims dims) {
  if (static_cast<std::size_t>(dims.rows) * static_cast<std::size_t>(dims.cols) != y.size()) {
    throw Error(ErrorCode::invalid_input, "grid dimensions do not match labeling");
  }
  out << "P2\n" << dims.cols << ' ' << dims.rows << "\n255\n";
  for (int r = 0; r < dims.rows; ++r) {
    for (int c = 0; c < dims.cols; ++c) {
      out << (c ? " " : "") << (y[static_cast<std::size_t>(r * dims.cols + c)] ? 255 : 0);
    }
    out << '\n';
  }
}

}  // namespace divmbest

#include "fmbound/serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fmbound {

namespace {

std::string domain_label(const GroupModel& model, int index) {
  if (const auto* g = model.get_if<FiniteAbelianGroup>()) return g->element_label(index);
  if (const auto* g = model.get_if<FiniteGroupTable>()) return g->elements()[index];
  if (const auto* g = model.get_if<TorusModel>()) {
    const auto coords = g->grid_coords(index);
    std::ostringstream out;
    out << "x(";
    for (std::size_t i = 0; i < coords.size(); ++i) out << (i ? "," : "") << coords[i];
    out << ")";
    return out.str();
  }
  throw InvalidArgument("model has no labeled domain: " + model.describe());
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double parse_number(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + " in CSV: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError(std::string("bad ") + what + " in CSV: '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string group_function_to_csv(const GroupFunction& f) {
  std::ostringstream out;
  out << "label,row,col,re,im\n";
  for (Eigen::Index i = 0; i < f.values().size(); ++i) {
    out << domain_label(f.model(), static_cast<int>(i)) << ",0,0,"
        << format_double(f.values()(i).real()) << "," << format_double(f.values()(i).imag())
        << "\n";
  }
  return out.str();
}

std::string block_symbol_to_csv(const BlockSymbol& sigma) {
  std::ostringstream out;
  out << "label,row,col,re,im\n";
  for (const SymbolBlock& block : sigma.blocks()) {
    for (int r = 0; r < block.dim; ++r) {
      for (int c = 0; c < block.dim; ++c) {
        out << block.label << "," << r << "," << c << ","
            << format_double(block.matrix(r, c).real()) << ","
            << format_double(block.matrix(r, c).imag()) << "\n";
      }
    }
  }
  return out.str();
}

GroupFunction group_function_from_csv(const GroupModel& model, std::istream& in) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < model.domain_size(); ++i) {
    index[domain_label(model, static_cast<int>(i))] = static_cast<int>(i);
  }
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(model.domain_size());
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("label,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) throw ConfigError("group function CSV rows need 5 columns");
    const auto it = index.find(fields[0]);
    if (it == index.end()) throw ConfigError("unknown element label in CSV: " + fields[0]);
    values(it->second) = {parse_number(fields[3], "re"), parse_number(fields[4], "im")};
  }
  return GroupFunction(model, std::move(values));
}

BlockSymbol block_symbol_from_csv(const GroupModel& model, std::istream& in) {
  BlockSymbol sigma = BlockSymbol::zero(model);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < sigma.blocks().size(); ++i) {
    index[sigma.blocks()[i].label] = i;
  }
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("label,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) throw ConfigError("block symbol CSV rows need 5 columns");
    const auto it = index.find(fields[0]);
    if (it == index.end()) throw ConfigError("unknown block label in CSV: " + fields[0]);
    SymbolBlock& block = sigma.blocks()[it->second];
    const int r = static_cast<int>(parse_number(fields[1], "row"));
    const int c = static_cast<int>(parse_number(fields[2], "col"));
    if (r < 0 || r >= block.dim || c < 0 || c >= block.dim) {
      throw ConfigError("matrix index out of range for block " + fields[0]);
    }
    block.matrix(r, c) = {parse_number(fields[3], "re"), parse_number(fields[4], "im")};
  }
  return sigma;
}

std::string step_function_to_csv(const StepFunction& mu) {
  std::ostringstream out;
  out << "value,width,cumulative_width\n";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out << format_double(mu.values()[i]) << "," << format_double(mu.widths()[i]) << ","
        << format_double(mu.breakpoints()[i]) << "\n";
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file for writing: " + tmp);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fmbound

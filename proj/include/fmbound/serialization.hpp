#pragma once

#include <istream>
#include <string>

#include "fmbound/fourier.hpp"
#include "fmbound/singular_values.hpp"

namespace fmbound {

// Shortest-exact decimal formatting ("%.17g" trimmed), deterministic.
std::string format_double(double x);

// CSV columns: label,row,col,re,im (row = col = 0 for scalar data).
std::string group_function_to_csv(const GroupFunction& f);
std::string block_symbol_to_csv(const BlockSymbol& sigma);
GroupFunction group_function_from_csv(const GroupModel& model, std::istream& in);
BlockSymbol block_symbol_from_csv(const GroupModel& model, std::istream& in);

// CSV columns: value,width,cumulative_width.
std::string step_function_to_csv(const StepFunction& mu);

// Writes content to path via a temp file in the same directory + rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fmbound

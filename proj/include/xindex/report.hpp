#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "xindex/evaluation.hpp"

namespace xindex {

/// One table per gold set: rows P@N... and AP, one column per indicator, 4 decimals.
void write_eval_table(std::ostream& out, const EvalReport& report, const EvalTable& table,
                      const std::vector<std::string>& echo = {});

/// Top-k by x-index and h-index side by side; winners marked "*" (nobel) and "#" (major prize).
void write_listing(std::ostream& out, const EvalReport& report,
                   const std::vector<std::string>& echo = {});

/// Every cell as an exact fraction plus its decimal value.
void write_report_json(std::ostream& out, const EvalReport& report,
                       const std::vector<std::string>& echo = {});

/// File name stem for a gold-set label ("nobel prize" -> "nobel_prize").
std::string label_stem(const std::string& label);

/// Writes table_<label>.csv per gold set, listing.csv and report.json into `dir`
/// (created if absent). Throws IoError when the directory cannot be written.
std::vector<std::filesystem::path> emit_report(const EvalReport& report,
                                               const std::filesystem::path& dir,
                                               const std::vector<std::string>& echo = {});

/// Ranked list as rank,author,value,tcn (value as an exact fraction for acnpp).
void write_ranked(std::ostream& out, const RankedList& ranked, Indicator indicator,
                  const std::vector<std::string>& echo = {});

}  // namespace xindex

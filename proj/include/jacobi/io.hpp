#ifndef JACOBI_IO_HPP
#define JACOBI_IO_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace jacobi::io {

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_number(double value);

/// Shortest text that parses back to the same double.
std::string format_shortest(double value);

/// Locale-independent parse of a complete token; false on trailing garbage.
bool parse_number(std::string_view text, double& out);

struct CsvData {
  std::vector<std::string> header;  // empty when the file has none
  std::vector<std::vector<double>> rows;

  /// Index of a header column, or -1.
  int column(std::string_view name) const;
};

/// Comma-separated numbers; a first line containing a non-numeric field is
/// taken as the header. Blank lines and lines starting with '#' are skipped.
CsvData read_csv(const std::string& path);

class CsvWriter {
public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(std::string_view text);
  CsvWriter& empty();
  void end_row();

private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace jacobi::io

#endif

#pragma once

#include <iosfwd>
#include <string>

#include "loopsoup/soup.hpp"

namespace loopsoup {

inline constexpr int kSchemaVersion = 1;

// Floats serialized with 17 significant digits so every double round-trips.
std::string format_double(double v);

void write_soup_json(std::ostream& os, const SoupRealization& soup);
void write_soup_pair_json(std::ostream& os, const SoupRealization& walk,
                          const SoupRealization& brownian);
void write_report_json(std::ostream& os, const CouplingReport& report);

struct SoupFile {
    bool is_pair = false;
    SoupRealization single;
    SoupRealization walk, brownian;
};
SoupFile read_soup_json(const std::string& path);

}  // namespace loopsoup

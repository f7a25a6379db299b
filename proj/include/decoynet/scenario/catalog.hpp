#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decoynet/scenario/types.hpp"

namespace decoynet {

struct ExploitInfo {
  std::string name;   // command-line identifier, e.g. "http2_slow_read"
  std::string title;  // display name
  std::uint16_t port = 0;
  std::chrono::year_month_day disclosure_date;
  std::string description;

  bool operator==(const ExploitInfo&) const = default;
};

/// The fixed eight-entry exploit catalog, newest first.
std::span<const ExploitInfo> exploit_catalog();

const ExploitInfo* find_exploit(std::string_view name);

/// Entries dated 2012 or earlier are obsolete; 2015 or later are up to date.
/// The catalog has nothing in between.
Age exploit_age(const ExploitInfo& exploit);

std::vector<const ExploitInfo*> catalog_entries(Age age);

std::string format_date(std::chrono::year_month_day date);
std::chrono::year_month_day parse_date(std::string_view text);

std::string_view service_name(std::uint16_t port);

/// Canned daemon names rendered by `ps -A`. Counts of 2 and 10 map to the two
/// canned lists; any other count takes a prefix of the long list.
std::vector<std::string> process_names(int count);

}  // namespace decoynet

#include "decoynet/scenario/catalog.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace decoynet {

namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::year;
using std::chrono::year_month_day;

constexpr year_month_day ymd(int y, unsigned m, unsigned d) {
  return year_month_day{year{y}, month{m}, day{d}};
}

const std::array<ExploitInfo, 8>& catalog_storage() {
  static const std::array<ExploitInfo, 8> entries{{
      {"http2_slow_read", "HTTP/2 slow read", 443, ymd(2020, 3, 1),
       "Holds HTTP/2 streams open with a zero receive window until worker threads run out."},
      {"ldaps_buffer_overflow", "LDAPS buffer overflow", 443, ymd(2017, 4, 11),
       "Oversized bind request overflows a fixed buffer in the TLS directory listener."},
      {"java_deserialize_rce", "Java deserialize remote code execution", 80, ymd(2015, 9, 29),
       "Crafted serialized object graph reaches a gadget chain in the application server."},
      {"remote_authentication", "Remote authentication", 22, ymd(2012, 10, 23),
       "Login handler accepts a malformed credential packet and skips password checks."},
      {"dos_attack", "DoS attack", 80, ymd(2010, 1, 26),
       "Malformed range headers trigger unbounded memory growth and a crash-restart loop."},
      {"asus_remote_code_execution", "ASUS remote code execution", 80, ymd(2008, 3, 25),
       "Unauthenticated management endpoint passes a request parameter to a shell."},
      {"authentication_bypass", "Authentication bypass", 3306, ymd(2006, 5, 15),
       "Zero-length scramble response is accepted as a valid database login."},
      {"remote_buffer_overflow", "Remote buffer overflow", 22, ymd(2001, 4, 4),
       "Long protocol banner overflows a stack buffer in the legacy daemon."},
  }};
  return entries;
}

}  // namespace

std::span<const ExploitInfo> exploit_catalog() {
  const auto& entries = catalog_storage();
  return {entries.data(), entries.size()};
}

const ExploitInfo* find_exploit(std::string_view name) {
  for (const auto& e : catalog_storage()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Age exploit_age(const ExploitInfo& exploit) {
  return exploit.disclosure_date.year() < year{2013} ? Age::Obsolete : Age::UpToDate;
}

std::vector<const ExploitInfo*> catalog_entries(Age age) {
  std::vector<const ExploitInfo*> out;
  for (const auto& e : catalog_storage()) {
    if (exploit_age(e) == age) out.push_back(&e);
  }
  return out;
}

std::string format_date(std::chrono::year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::chrono::year_month_day parse_date(std::string_view text) {
  auto field = [&](std::size_t pos, std::size_t len) {
    int value = 0;
    const auto* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc{} || ptr != first + len) throw std::invalid_argument("bad date: " + std::string(text));
    return value;
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw std::invalid_argument("bad date: " + std::string(text));
  }
  const auto date = ymd(field(0, 4), static_cast<unsigned>(field(5, 2)), static_cast<unsigned>(field(8, 2)));
  if (!date.ok()) throw std::invalid_argument("bad date: " + std::string(text));
  return date;
}

std::string_view service_name(std::uint16_t port) {
  switch (port) {
    case 22: return "ssh";
    case 80: return "http";
    case 443: return "https";
    case 3306: return "mysql";
    case 2222: return "ssh-alt";
    case 4433: return "https-alt";
    case 5001: return "commplex-link";
    default: return "unknown";
  }
}

std::vector<std::string> process_names(int count) {
  static const std::array<const char*, 10> full{"systemd",   "sshd",     "nginx",      "mysqld",  "cron",
                                                 "rsyslogd", "dbus-daemon", "php-fpm", "postfix", "containerd"};
  static const std::array<const char*, 2> sparse{"init", "sshd"};
  std::vector<std::string> out;
  if (count <= 0) return out;
  if (count == 2) return {sparse.begin(), sparse.end()};
  for (int i = 0; i < count; ++i) {
    std::string name = full[static_cast<std::size_t>(i) % full.size()];
    if (i >= static_cast<int>(full.size())) name += "-" + std::to_string(i / static_cast<int>(full.size()));
    out.push_back(std::move(name));
  }
  return out;
}

}  // namespace decoynet

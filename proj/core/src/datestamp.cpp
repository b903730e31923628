#include "logperiod/datestamp.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lppl {

namespace {

constexpr std::array<int, 12> kMonthDays = {31, 28, 31, 30, 31, 30,
                                            31, 31, 30, 31, 30, 31};

void validate(const DateStamp& d) {
    if (d.month < 1 || d.month > 12)
        throw std::invalid_argument("month out of range: " +
                                    std::to_string(d.month));
    if (d.day < 1 || d.day > days_in_month(d.year, d.month))
        throw std::invalid_argument("day out of range: " + iso_string(d));
}

int parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: " + std::string(s));
    return value;
}

}  // namespace

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_year(int year) { return is_leap_year(year) ? 366 : 365; }

int days_in_month(int year, int month) {
    if (month == 2 && is_leap_year(year)) return 29;
    return kMonthDays[static_cast<std::size_t>(month - 1)];
}

int day_of_year(const DateStamp& d) {
    validate(d);
    int doy = d.day;
    for (int m = 1; m < d.month; ++m) doy += days_in_month(d.year, m);
    return doy;
}

double fractional_year(const DateStamp& d) {
    return d.year +
           static_cast<double>(day_of_year(d) - 1) / days_in_year(d.year);
}

DateStamp date_from_fractional_year(double fy) {
    int year = static_cast<int>(std::floor(fy));
    int n = days_in_year(year);
    int doy = static_cast<int>(std::lround((fy - year) * n)) + 1;
    if (doy > n) {  // rounded past New Year
        ++year;
        doy = 1;
    }
    DateStamp d{year, 1, 1};
    while (doy > days_in_month(d.year, d.month)) {
        doy -= days_in_month(d.year, d.month);
        ++d.month;
    }
    d.day = doy;
    return d;
}

DateStamp parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw std::invalid_argument("expected YYYY-MM-DD, got '" +
                                    std::string(text) + "'");
    DateStamp d{parse_int(text.substr(0, 4)), parse_int(text.substr(5, 2)),
                parse_int(text.substr(8, 2))};
    validate(d);
    return d;
}

std::string iso_string(const DateStamp& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace lppl

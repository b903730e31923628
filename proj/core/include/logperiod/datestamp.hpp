#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace lppl {

// Calendar date with an exact fractional-year mapping:
//   fy = year + (day_of_year - 1) / days_in_year
// The mapping is bijective per calendar day (leap years use 366).
struct DateStamp {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const DateStamp&) const = default;
};

bool is_leap_year(int year);
int days_in_year(int year);
int days_in_month(int year, int month);
int day_of_year(const DateStamp& d);

double fractional_year(const DateStamp& d);

// Inverse of fractional_year, rounding to the nearest calendar day.
DateStamp date_from_fractional_year(double fy);

// Parses YYYY-MM-DD. Throws std::invalid_argument on malformed input.
DateStamp parse_iso_date(std::string_view text);
std::string iso_string(const DateStamp& d);

}  // namespace lppl

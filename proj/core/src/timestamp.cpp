#include "facewall/timestamp.hpp"

#include <charconv>
#include <cstdio>

namespace facewall {

namespace {

using namespace std::chrono;

bool read_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
    if (pos + count > text.size()) return false;
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

std::optional<sys_days> read_full_date(std::string_view text) {
    int y = 0, mo = 0, d = 0;
    if (!read_digits(text, 0, 4, y) || text[4] != '-' || !read_digits(text, 5, 2, mo) ||
        text[7] != '-' || !read_digits(text, 8, 2, d)) {
        return std::nullopt;
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd};
}

}  // namespace

std::optional<Timestamp> parse_rfc3339(std::string_view text) {
    // date "T" hh:mm:ss [.frac] (Z | +hh:mm | -hh:mm)
    if (text.size() < 20) return std::nullopt;
    const auto date = read_full_date(text);
    if (!date) return std::nullopt;
    const char sep = text[10];
    if (sep != 'T' && sep != 't' && sep != ' ') return std::nullopt;

    int hh = 0, mm = 0, ss = 0;
    if (!read_digits(text, 11, 2, hh) || text[13] != ':' || !read_digits(text, 14, 2, mm) ||
        text[16] != ':' || !read_digits(text, 17, 2, ss)) {
        return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;

    std::size_t pos = 19;
    long long micros = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        int digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (digits < 6) {
                micros = micros * 10 + (text[pos] - '0');
            } else if (text[pos] != '0') {
                return std::nullopt;
            }
            ++digits;
            ++pos;
        }
        if (pos == start) return std::nullopt;
        for (int i = digits; i < 6; ++i) micros *= 10;
    }

    if (pos >= text.size()) return std::nullopt;
    minutes offset{0};
    const char zone = text[pos];
    if (zone == 'Z' || zone == 'z') {
        ++pos;
    } else if (zone == '+' || zone == '-') {
        int oh = 0, om = 0;
        if (!read_digits(text, pos + 1, 2, oh) || pos + 3 >= text.size() || text[pos + 3] != ':' ||
            !read_digits(text, pos + 4, 2, om)) {
            return std::nullopt;
        }
        if (oh > 23 || om > 59) return std::nullopt;
        offset = hours{oh} + minutes{om};
        if (zone == '-') offset = -offset;
        pos += 6;
    } else {
        return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;

    const auto local = Timestamp{*date} + hours{hh} + minutes{mm} + seconds{ss} +
                       microseconds{micros};
    return local - offset;
}

std::string format_rfc3339(Timestamp ts) {
    const auto day = floor<days>(ts);
    const year_month_day ymd{day};
    const hh_mm_ss tod{ts - day};
    char buf[48];
    int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d",
                          static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                          static_cast<unsigned>(ymd.day()), static_cast<int>(tod.hours().count()),
                          static_cast<int>(tod.minutes().count()),
                          static_cast<int>(tod.seconds().count()));
    std::string out(buf, static_cast<std::size_t>(n));
    const auto frac = tod.subseconds().count();
    if (frac != 0) {
        n = std::snprintf(buf, sizeof buf, ".%06lld", static_cast<long long>(frac));
        out.append(buf, static_cast<std::size_t>(n));
    }
    out += 'Z';
    return out;
}

std::string format_date(sys_days day) {
    const year_month_day ymd{day};
    char buf[16];
    const int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                                static_cast<unsigned>(ymd.month()),
                                static_cast<unsigned>(ymd.day()));
    return std::string(buf, static_cast<std::size_t>(n));
}

std::optional<sys_days> parse_date(std::string_view text) {
    if (text.size() != 10) return std::nullopt;
    return read_full_date(text);
}

}  // namespace facewall

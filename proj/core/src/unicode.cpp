#include "facewall/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "facewall/error.hpp"

namespace facewall::unicode {

bool is_valid_utf8(std::string_view bytes) {
    const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
    const auto length = static_cast<int32_t>(bytes.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c < 0) return false;
    }
    return true;
}

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
    const auto length = static_cast<int32_t>(bytes.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(s, i, length, c);
        out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
    }
    return out;
}

std::string encode_utf8(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char32_t c : text) {
        uint8_t buf[U8_MAX_LENGTH];
        int32_t n = 0;
        UBool error = false;
        U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
        if (error) {
            // Surrogates or out-of-range values; substitute U+FFFD.
            n = 0;
            U8_APPEND_UNSAFE(buf, n, 0xFFFD);
        }
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    }
    return out;
}

std::u32string normalize_nfc(std::u32string_view text) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) fail(ErrorKind::kInternal, "icu", u_errorName(status));

    const auto source = icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(text.data()),
                                                      static_cast<int32_t>(text.size()));
    if (nfc->isNormalized(source, status) && U_SUCCESS(status)) return std::u32string(text);
    status = U_ZERO_ERROR;
    const icu::UnicodeString normalized = nfc->normalize(source, status);
    if (U_FAILURE(status)) fail(ErrorKind::kInternal, "icu", u_errorName(status));

    std::u32string out(static_cast<std::size_t>(normalized.countChar32()), U'\0');
    status = U_ZERO_ERROR;
    normalized.toUTF32(reinterpret_cast<UChar32*>(out.data()), static_cast<int32_t>(out.size()),
                       status);
    if (U_FAILURE(status)) fail(ErrorKind::kInternal, "icu", u_errorName(status));
    return out;
}

std::string normalize_nfc(std::string_view utf8) {
    return encode_utf8(normalize_nfc(decode_utf8(utf8)));
}

bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }

bool is_mark(char32_t c) { return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_M_MASK) != 0; }

bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }

bool is_whitespace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

char32_t fold_case(char32_t c) {
    return static_cast<char32_t>(u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT));
}

std::u32string fold_case(std::u32string_view text) {
    std::u32string out(text);
    for (auto& c : out) c = fold_case(c);
    return out;
}

}  // namespace facewall::unicode

#pragma once

// Paragraph-text extraction from saved article pages.
//
// The scanner is deliberately forgiving: real news pages are full of
// unclosed tags, stray angle brackets and bare ampersands. Text is collected
// only inside <p> elements. An unclosed paragraph ends at the next block
// boundary (another <p>, a <div>, a heading, ...) or at end of input.

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace veracity {

namespace html_detail {

inline bool ieq_prefix(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (s.size() - pos < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
    }
    return true;
}

inline bool is_block_boundary(std::string_view name) {
    static constexpr std::array<std::string_view, 34> names = {
        "address", "article", "aside",  "blockquote", "body",   "dd",     "div",
        "dl",      "dt",      "fieldset", "figcaption", "figure", "footer", "form",
        "h1",      "h2",      "h3",     "h4",         "h5",     "h6",     "head",
        "header",  "hr",      "html",   "li",         "main",   "nav",    "ol",
        "pre",     "section", "table",  "td",         "tr",     "ul"};
    return std::find(names.begin(), names.end(), name) != names.end();
}

inline void append_utf8(std::string& out, unsigned long cp) {
    if (cp == '<' || cp == '>' || cp == 0 || cp > 0x10FFFF) {
        out.push_back(' ');
    } else if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

/// Decodes the entity starting at html[pos] == '&' into out. Returns the
/// number of input bytes consumed. Unknown entities are kept literally.
/// &lt; and &gt; decode to a space so no markup delimiter can appear in
/// extracted text.
inline std::size_t decode_entity(std::string_view html, std::size_t pos, std::string& out) {
    const auto semi = html.find(';', pos);
    if (semi == std::string_view::npos || semi - pos > 10) {
        out.push_back('&');
        return 1;
    }
    const auto body = html.substr(pos + 1, semi - pos - 1);
    struct Named {
        std::string_view name;
        unsigned long cp;
    };
    static constexpr std::array<Named, 14> named = {{{"amp", '&'},
                                                     {"lt", '<'},
                                                     {"gt", '>'},
                                                     {"quot", '"'},
                                                     {"apos", '\''},
                                                     {"nbsp", ' '},
                                                     {"mdash", 0x2014},
                                                     {"ndash", 0x2013},
                                                     {"lsquo", 0x2018},
                                                     {"rsquo", 0x2019},
                                                     {"ldquo", 0x201C},
                                                     {"rdquo", 0x201D},
                                                     {"hellip", 0x2026},
                                                     {"copy", 0xA9}}};
    for (const auto& e : named) {
        if (body == e.name) {
            append_utf8(out, e.cp);
            return semi - pos + 1;
        }
    }
    if (body.size() >= 2 && body[0] == '#') {
        unsigned long cp = 0;
        bool ok = true;
        const bool hex = body[1] == 'x' || body[1] == 'X';
        const auto digits = body.substr(hex ? 2 : 1);
        if (digits.empty()) ok = false;
        for (char c : digits) {
            const auto u = static_cast<unsigned char>(c);
            if (hex ? !std::isxdigit(u) : !std::isdigit(u)) {
                ok = false;
                break;
            }
            cp = cp * (hex ? 16 : 10) +
                 static_cast<unsigned long>(std::isdigit(u) ? c - '0' : std::tolower(u) - 'a' + 10);
            if (cp > 0x10FFFF) cp = 0x110000;
        }
        if (ok) {
            append_utf8(out, cp);
            return semi - pos + 1;
        }
    }
    out.push_back('&');
    return 1;
}

inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace html_detail

/// Text of every <p> element in document order, one paragraph per line.
/// Nested inline tags are stripped, whitespace is collapsed and empty
/// paragraphs are dropped. The result never contains '<' or '>'.
inline std::string extract_paragraphs(std::string_view html) {
    using namespace html_detail;
    std::vector<std::string> paragraphs;
    std::string current;
    bool in_para = false;

    auto flush = [&] {
        if (in_para) {
            auto text = collapse_whitespace(current);
            if (!text.empty()) paragraphs.push_back(std::move(text));
        }
        current.clear();
        in_para = false;
    };

    std::size_t i = 0;
    const std::size_t n = html.size();
    while (i < n) {
        const char c = html[i];
        if (c == '<') {
            if (html.compare(i, 4, "<!--") == 0) {
                const auto end = html.find("-->", i + 4);
                i = end == std::string_view::npos ? n : end + 3;
                continue;
            }
            std::size_t j = i + 1;
            const bool closing = j < n && html[j] == '/';
            if (closing) ++j;
            std::size_t name_start = j;
            while (j < n && std::isalnum(static_cast<unsigned char>(html[j]))) ++j;
            if (j == name_start || !std::isalpha(static_cast<unsigned char>(html[name_start]))) {
                // Not a tag ("a < b", "<3", "<!DOCTYPE"): drop the bracket only,
                // except for declarations which are skipped whole.
                if (!closing && name_start < n && (html[name_start] == '!' || html[name_start] == '?')) {
                    const auto gt = html.find('>', name_start);
                    i = gt == std::string_view::npos ? n : gt + 1;
                } else {
                    i += 1;
                }
                continue;
            }
            std::string name(html.substr(name_start, j - name_start));
            std::transform(name.begin(), name.end(), name.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            const auto gt = html.find('>', j);
            const std::size_t after = gt == std::string_view::npos ? n : gt + 1;

            if (!closing && (name == "script" || name == "style")) {
                const std::string close = "</" + name;
                std::size_t k = after;
                while (k < n && !ieq_prefix(html, k, close)) ++k;
                if (k >= n) {
                    i = n;
                } else {
                    const auto end_gt = html.find('>', k);
                    i = end_gt == std::string_view::npos ? n : end_gt + 1;
                }
                continue;
            }
            if (name == "p") {
                flush();
                in_para = !closing;
            } else if (is_block_boundary(name)) {
                flush();
            } else if (in_para && name == "br") {
                current.push_back(' ');
            }
            i = after;
            continue;
        }
        if (c == '>') {
            ++i;
            continue;
        }
        if (!in_para) {
            ++i;
            continue;
        }
        if (c == '&') {
            i += decode_entity(html, i, current);
            continue;
        }
        current.push_back(c);
        ++i;
    }
    flush();

    std::string out;
    for (std::size_t k = 0; k < paragraphs.size(); ++k) {
        if (k) out.push_back('\n');
        out += paragraphs[k];
    }
    return out;
}

}  // namespace veracity

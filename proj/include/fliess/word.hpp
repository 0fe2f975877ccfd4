#ifndef FLIESS_WORD_HPP
#define FLIESS_WORD_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fliess/errors.hpp"

namespace fliess {

/// A word over the alphabet {x_1, ..., x_m}, stored as its letter indices.
/// Letters carry the degree convention deg(x_i) = i, so the degree of a word
/// is the sum of its letter indices and the empty word has degree 0.
///
/// The canonical total order used everywhere (term ordering, enumeration,
/// JSON output) is: degree ascending, then length descending, then
/// lexicographic on the index sequence ascending. Within one graded
/// component this lists the x_1-heavy long words first, e.g. for degree 3
/// over m = 3: x1x1x1, x1x2, x2x1, x3.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {
        for (auto l : letters_)
            if (l < 1) throw std::invalid_argument("Word: letter index must be >= 1");
    }

    static Word empty() { return Word{}; }

    /// Single-letter word x_i.
    static Word letter(int i) {
        if (i < 1 || i > 255) throw std::invalid_argument("Word::letter: index out of range");
        return Word(std::vector<std::uint8_t>{static_cast<std::uint8_t>(i)});
    }

    std::size_t length() const { return letters_.size(); }
    bool is_empty() const { return letters_.empty(); }

    int degree() const {
        int d = 0;
        for (auto l : letters_) d += l;
        return d;
    }

    int max_letter() const {
        int m = 0;
        for (auto l : letters_) m = std::max<int>(m, l);
        return m;
    }

    int at(std::size_t i) const { return letters_[i]; }
    const std::vector<std::uint8_t>& letters() const { return letters_; }

    Word append(int i) const {
        auto v = letters_;
        v.push_back(static_cast<std::uint8_t>(i));
        return Word(std::move(v));
    }

    Word prepend(int i) const {
        std::vector<std::uint8_t> v;
        v.reserve(letters_.size() + 1);
        v.push_back(static_cast<std::uint8_t>(i));
        v.insert(v.end(), letters_.begin(), letters_.end());
        return Word(std::move(v));
    }

    Word concat(const Word& other) const {
        auto v = letters_;
        v.insert(v.end(), other.letters_.begin(), other.letters_.end());
        return Word(std::move(v));
    }

    /// First letter and remainder; word must be nonempty.
    int head() const { return letters_.front(); }
    Word tail() const {
        return Word(std::vector<std::uint8_t>(letters_.begin() + 1, letters_.end()));
    }
    /// All letters but the last; word must be nonempty.
    Word drop_last() const {
        return Word(std::vector<std::uint8_t>(letters_.begin(), letters_.end() - 1));
    }
    int last() const { return letters_.back(); }

    bool operator==(const Word& o) const { return letters_ == o.letters_; }

    /// Canonical order: degree asc, length desc, lex asc.
    std::strong_ordering operator<=>(const Word& o) const {
        if (auto c = degree() <=> o.degree(); c != 0) return c;
        if (auto c = o.length() <=> length(); c != 0) return c;
        return letters_ <=> o.letters_;
    }

    /// Textual form: "e" for the empty word, otherwise "x1.x2.x1".
    std::string str() const {
        if (letters_.empty()) return "e";
        std::string s;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += '.';
            s += 'x';
            s += std::to_string(static_cast<int>(letters_[i]));
        }
        return s;
    }

    /// Parses the textual form accepted by the CLI and JSON files.
    static Word parse(const std::string& s) {
        if (s.empty() || s == "e") return Word{};
        std::vector<std::uint8_t> v;
        std::size_t pos = 0;
        while (pos < s.size()) {
            if (s[pos] != 'x') throw std::invalid_argument("Word::parse: expected 'x' in '" + s + "'");
            ++pos;
            std::size_t end = s.find('.', pos);
            if (end == std::string::npos) end = s.size();
            int idx = std::stoi(s.substr(pos, end - pos));
            if (idx < 1 || idx > 255) throw std::invalid_argument("Word::parse: letter index out of range");
            v.push_back(static_cast<std::uint8_t>(idx));
            pos = end + (end < s.size() ? 1 : 0);
        }
        return Word(std::move(v));
    }

private:
    std::vector<std::uint8_t> letters_;
};

inline std::strong_ordering compare(const Word& a, const Word& b) { return a <=> b; }

/// All words over {x_1..x_m} of degree <= max_degree, in canonical order.
/// The count is the number of integer compositions with parts <= m summing
/// to at most max_degree, plus one for the empty word.
inline std::vector<Word> enumerate_words(int m, int max_degree) {
    if (m < 1) throw std::invalid_argument("enumerate_words: m must be >= 1");
    if (max_degree < 0) throw std::invalid_argument("enumerate_words: max_degree must be >= 0");
    std::vector<Word> out;
    std::vector<std::uint8_t> cur;
    // Depth-first over compositions; sorted afterwards into canonical order.
    auto rec = [&](auto&& self, int remaining) -> void {
        out.emplace_back(cur);
        for (int i = 1; i <= std::min(m, remaining); ++i) {
            cur.push_back(static_cast<std::uint8_t>(i));
            self(self, remaining - i);
            cur.pop_back();
        }
    };
    rec(rec, max_degree);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fliess

#endif

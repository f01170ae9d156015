#include "ifslab/word.hpp"

#include <algorithm>
#include <cstdlib>

namespace ifslab {

Word Word::parse(const std::string& text) {
    std::vector<int> letters;
    std::size_t pos = 0;
    const std::size_t n = text.size();
    while (pos < n && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos == n) throw SyntaxError("empty word", pos);
    while (true) {
        if (pos >= n || text[pos] < '0' || text[pos] > '9')
            throw SyntaxError("expected letter index", pos);
        long v = 0;
        while (pos < n && text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + (text[pos] - '0');
            if (v > 1000000) throw SyntaxError("letter index too large", pos);
            ++pos;
        }
        if (v < 1) throw SyntaxError("letter indices start at 1", pos);
        letters.push_back(static_cast<int>(v));
        while (pos < n && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos == n) break;
        if (text[pos] != ',') throw SyntaxError("expected ','", pos);
        ++pos;
        while (pos < n && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    return Word(std::move(letters));
}

Word Word::concat(const Word& tail) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
    return Word(std::move(out));
}

Word Word::reversed() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    return Word(std::move(out));
}

Word Word::prefix(std::size_t len) const {
    if (len > letters_.size()) len = letters_.size();
    return Word(std::vector<int>(letters_.begin(), letters_.begin() + static_cast<long>(len)));
}

Word Word::repeat(int times) const {
    if (times < 0) throw DomainError("negative repeat count");
    std::vector<int> out;
    out.reserve(letters_.size() * static_cast<std::size_t>(times));
    for (int t = 0; t < times; ++t) out.insert(out.end(), letters_.begin(), letters_.end());
    return Word(std::move(out));
}

std::size_t Word::common_prefix(const Word& a, const Word& b) {
    std::size_t n = std::min(a.size(), b.size());
    std::size_t k = 0;
    while (k < n && a.letters_[k] == b.letters_[k]) ++k;
    return k;
}

std::string Word::str() const {
    std::string out;
    for (std::size_t k = 0; k < letters_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(letters_[k]);
    }
    return out;
}

std::uint64_t count_words(int alphabet, int length, std::uint64_t cap) {
    if (alphabet < 1) throw DomainError("alphabet must be nonempty");
    if (length < 0) throw DomainError("negative word length");
    std::uint64_t total = 1;
    for (int k = 0; k < length; ++k) {
        if (total > cap / static_cast<std::uint64_t>(alphabet))
            throw SizeLimit("word enumeration exceeds cap");
        total *= static_cast<std::uint64_t>(alphabet);
    }
    if (total > cap) throw SizeLimit("word enumeration exceeds cap");
    return total;
}

void for_each_word(int alphabet, int length, const std::function<void(const std::vector<int>&)>& fn,
                   std::uint64_t cap) {
    count_words(alphabet, length, cap);
    std::vector<int> cur(static_cast<std::size_t>(length), 1);
    if (length == 0) {
        fn(cur);
        return;
    }
    while (true) {
        fn(cur);
        int pos = length - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == alphabet) {
            cur[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<std::size_t>(pos)];
    }
}

std::vector<Word> enumerate_words(int alphabet, int length, std::uint64_t cap) {
    std::vector<Word> out;
    out.reserve(count_words(alphabet, length, cap));
    for_each_word(alphabet, length, [&](const std::vector<int>& w) { out.emplace_back(w); }, cap);
    return out;
}

}  // namespace ifslab

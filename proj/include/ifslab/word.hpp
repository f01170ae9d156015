#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ifslab/errors.hpp"

namespace ifslab {

// Finite word over the alphabet {1, ..., N}; letter order is the symbolic
// order i_1 i_2 ... i_n. Composition orientation is chosen at evaluation time.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    static Word parse(const std::string& text);  // "1,2,3"

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int at(std::size_t pos) const { return letters_[pos]; }  // 0-based position
    const std::vector<int>& letters() const { return letters_; }

    Word concat(const Word& tail) const;
    Word reversed() const;
    Word prefix(std::size_t len) const;
    Word repeat(int times) const;

    static std::size_t common_prefix(const Word& a, const Word& b);

    std::string str() const;

    bool operator==(const Word& o) const { return letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return letters_ != o.letters_; }
    bool operator<(const Word& o) const { return letters_ < o.letters_; }

  private:
    std::vector<int> letters_;
};

// lexicographic enumeration of all words of the given length
std::vector<Word> enumerate_words(int alphabet, int length, std::uint64_t cap = 10000000);

// streaming form; letters buffer is reused between calls
void for_each_word(int alphabet, int length, const std::function<void(const std::vector<int>&)>& fn,
                   std::uint64_t cap = 10000000);

std::uint64_t count_words(int alphabet, int length, std::uint64_t cap = 10000000);

}  // namespace ifslab

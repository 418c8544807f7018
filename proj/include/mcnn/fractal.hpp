#pragma once

#include "mcnn/shifts.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace mcnn {

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    double area() const { return (x1 - x0) * (y1 - y0); }
    bool operator==(const Rect&) const = default;
};

// block holds digits at coordinates -n..n (index 0 is coordinate -n);
// x from coordinates 0..n, y from 0,-1..-n, sides m^-(n+1)
Rect expansion_rectangle(const std::vector<int>& block, int m);

enum class FractalMode { Letters, States };

inline constexpr long long kBlockBudget = 4000000;

struct FractalSpec {
    Presentation presentation;
    FractalMode mode = FractalMode::Letters;
    int depth = 1;
    int resolution = 512;
    std::vector<int> symbol_index{0, 1};  // letter -> digit (letters mode)
    long long budget = kBlockBudget;

    int base() const;
};

// number of admissible central blocks of length 2*depth+1, saturating at budget+1
long long count_blocks(const FractalSpec& spec);
// admissible central blocks as digit words, lexicographic; DepthLimit over budget
std::vector<std::vector<int>> central_blocks(const FractalSpec& spec);

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row 0 at the top; 0 = covered, 255 = empty
    std::string comment;
};

struct FractalImage {
    std::vector<Rect> rects;
    Raster raster;
    int base = 2;
    long long blocks = 0;
};

FractalImage render(const FractalSpec& spec);
void write_pgm(std::ostream& os, const Raster& r);
void write_rectangles(std::ostream& os, const std::vector<Rect>& rects);

}  // namespace mcnn

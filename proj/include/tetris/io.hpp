#pragma once

#include <iosfwd>
#include <string>

#include "tetris/engine.hpp"
#include "tetris/search.hpp"

namespace tetris {

// TETRIS v1 / TRAJ v1 text formats. Readers throw Error(Parse) with the
// 1-based line number in step().
TetrisInstance read_instance(std::istream& in);
TetrisInstance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const TetrisInstance& inst);

Trajectory read_trajectory(std::istream& in);
Trajectory read_trajectory_file(const std::string& path);
void write_trajectory(std::ostream& out, const Trajectory& traj);

// META v1 sidecar: one "<name> <n> r,c ..." line per landmark.
Landmarks read_landmarks(std::istream& in);
Landmarks read_landmarks_file(const std::string& path);
void write_landmarks(std::ostream& out, const Landmarks& meta);

// Splits a line into whitespace-separated tokens.
std::vector<std::string> split_ws(const std::string& line);

}  // namespace tetris

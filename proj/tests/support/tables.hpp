#pragma once

// Published classroom results, transcribed cell by cell.

#include <string>
#include <vector>

namespace tables {

struct Row {
  int direction;
  int polarity;
  const char* direction_pct;
  const char* polarity_pct;
};

struct Footer {
  const char* mean;
  const char* median;
  const char* sd;
};

struct Table {
  int links;
  std::vector<Row> rows;
  Footer direction_count, polarity_count;
  Footer direction_pct, polarity_pct;
};

// Activity 1: national income model, 32 links.
inline const Table activity1{
    32,
    {{0, 15, "0.00", "46.88"},
     {0, 0, "0.00", "0.00"},
     {3, 3, "9.38", "9.38"},
     {4, 2, "12.50", "6.25"},
     {0, 13, "0.00", "40.63"},
     {0, 14, "0.00", "43.75"},
     {17, 22, "53.13", "68.75"},
     {13, 19, "40.63", "59.38"},
     {16, 21, "50.00", "65.63"},
     {4, 14, "12.50", "43.75"},
     {6, 11, "18.75", "34.38"},
     {16, 17, "50.00", "53.13"},
     {15, 13, "46.88", "40.63"},
     {9, 8, "28.13", "25.00"},
     {10, 6, "31.25", "18.75"}},
    {"7.53", "6.00", "6.56"},
    {"11.87", "13.00", "6.82"},
    {"23.54", "18.75", "20.49"},
    {"37.08", "40.63", "21.32"}};

// Activity 2: government-purchases multiplier, 8 links.
inline const Table activity2{
    8,
    {{8, 6, "100.00", "75.00"},
     {7, 0, "87.50", "0.00"},
     {7, 6, "87.50", "75.00"},
     {7, 0, "87.50", "0.00"},
     {0, 3, "0.00", "37.50"},
     {7, 7, "87.50", "87.50"},
     {5, 8, "62.50", "100.00"},
     {5, 8, "62.50", "100.00"},
     {6, 8, "75.00", "100.00"},
     {8, 6, "100.00", "75.00"},
     {4, 1, "50.00", "12.50"},
     {6, 7, "75.00", "87.50"},
     {3, 7, "37.50", "87.50"}},
    {"5.62", "6.00", "2.26"},
    {"5.15", "6.00", "3.05"},
    {"70.19", "75.00", "28.20"},
    {"64.42", "75.00", "38.14"}};

// Activity 3: tax multiplier, 8 links. Student 4 handed in a blank sheet.
// The printed count footer only matches with that student left out, while
// the percentage footer includes all fourteen.
inline const Table activity3{
    8,
    {{8, 7, "100.00", "87.50"},
     {8, 8, "100.00", "100.00"},
     {4, 0, "50.00", "0.00"},
     {0, 0, "0.00", "0.00"},
     {8, 7, "100.00", "87.50"},
     {5, 7, "62.50", "87.50"},
     {8, 8, "100.00", "100.00"},
     {8, 7, "100.00", "87.50"},
     {8, 5, "100.00", "62.50"},
     {8, 8, "100.00", "100.00"},
     {5, 0, "62.50", "0.00"},
     {7, 5, "87.50", "62.50"},
     {8, 8, "100.00", "100.00"},
     {8, 8, "100.00", "100.00"}},
    {"7.15", "8.00", "1.46"},
    {"6.00", "7.00", "2.86"},
    {"83.04", "100.00", "29.66"},
    {"69.64", "87.50", "39.75"}};
inline constexpr int activity3_blank_row = 3;

struct SummaryRow {
  const char* dir_mean;
  const char* dir_sd;
  const char* dir_cv;
  const char* pol_mean;
  const char* pol_sd;
  const char* pol_cv;
};

// Class statistics across the three activities.
inline const std::vector<SummaryRow> summary{{"23.54", "20.49", "0.87", "37.08", "21.32", "0.57"},
                                             {"70.19", "28.20", "0.40", "64.42", "38.14", "0.59"},
                                             {"83.04", "29.66", "0.36", "69.64", "39.75", "0.57"}};

// The ten students present in all three activities. Indices are 0-based rows
// of the tables above, matched by their percentage cells.
struct Persistent {
  int a1, a2, a3;
};
inline const std::vector<Persistent> persistent{{0, 10, 11}, {2, 12, 1},  {4, 8, 8},  {5, 11, 6},
                                                {6, 2, 0},   {7, 6, 5},   {9, 1, 10}, {10, 5, 9},
                                                {11, 7, 12}, {14, 0, 2}};

struct CohortCells {
  const char* cells[6];
};
inline const std::vector<CohortCells> cohort_rows{
    {{"0.00", "46.88", "50.00", "12.50", "87.50", "62.50"}},
    {{"9.38", "9.38", "37.50", "87.50", "100.00", "100.00"}},
    {{"0.00", "40.63", "75.00", "100.00", "100.00", "62.50"}},
    {{"0.00", "43.75", "75.00", "87.50", "100.00", "100.00"}},
    {{"53.13", "68.75", "87.50", "75.00", "100.00", "87.50"}},
    {{"40.63", "59.38", "62.50", "100.00", "62.50", "87.50"}},
    {{"12.50", "43.75", "87.50", "0.00", "62.50", "0.00"}},
    {{"18.75", "34.38", "87.50", "87.50", "100.00", "100.00"}},
    {{"50.00", "53.13", "62.50", "100.00", "100.00", "100.00"}},
    {{"31.25", "18.75", "100.00", "75.00", "50.00", "0.00"}}};

// mean, median, sd, cv for each of the six columns
inline const std::vector<std::vector<const char*>> cohort_footer{
    {"21.56", "41.88", "72.50", "72.50", "86.25", "70.00"},
    {"15.63", "43.75", "75.00", "87.50", "100.00", "87.50"},
    {"20.80", "17.75", "19.36", "36.23", "19.94", "39.62"},
    {"0.96", "0.42", "0.27", "0.50", "0.23", "0.57"}};

}  // namespace tables

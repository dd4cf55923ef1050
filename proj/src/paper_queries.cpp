#include "ottdb/paper_queries.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace ottdb {

namespace {

// Kept byte-for-byte identical to resources/paper_queries/q<N>.sql.
constexpr std::array<std::string_view, 6> kQueries = {
    R"sql(SELECT COUNT(Actor_id), Nationality
FROM Actors
GROUP BY Nationality
ORDER BY COUNT(Actor_id) DESC;
)sql",
    R"sql(SELECT b.`show name`, a.`IMDB rating`
FROM `Critics_Rating` a
JOIN `Show_id-name` b
ON a.show_id = b.show_id
WHERE `IMDB rating` = 10;
)sql",
    R"sql(SELECT a.`Show Name`, b. `Writer`, b.`Release year`
FROM `Show_id-name` a
JOIN `Collections_of_shows` b
ON a.`Show_id` = b.`Show_id`
WHERE b.`Writer` = 'S.S. Wilson'
)sql",
    R"sql(SELECT b.`Platform name`, SUM(`views/mo`) AS 'TOTAL'
FROM Statistics a
JOIN Platforms b
ON a.`Platform_id` = b.`Platform_id`
GROUP BY b.`Platform name`;
)sql",
    R"sql(SELECT b.Show_id,a.`Show Name`,c.Production_Name ,b.Seasons,b.Episodes
FROM `Show_id-name` a
JOIN `TV_series` b
ON a.Show_id = b.Show_id
JOIN Productions c
ON b.Production_id = c.Production_id
WHERE Seasons<2
AND Episodes <6
ORDER BY b.Seasons;
)sql",
    R"sql(SELECT a.`Show Name`,b. Writer, b.`Release year`, b.Genre,e.`Actor name`
FROM `Show_id-name` a
JOIN `Collections_of_shows` b ON a.Show_id = b.Show_id
JOIN Director c ON a.Show_id = c.Show_id
JOIN `Actor_id-Show_id` d ON a.Show_id = d.Show_id
JOIN Actors e ON d.Actor_id = e.Actor_id
JOIN PG_Rating f ON a.Show_id = f.Show_id
WHERE Age <= 40
AND Genre = 'Adventure'
AND `U/A` = 1
AND Gender = 'Male'
ORDER BY a.Show_id
)sql",
};

}  // namespace

std::string_view paper_query(int number) {
    if (number < 1 || number > static_cast<int>(kQueries.size())) {
        throw std::out_of_range("paper query number must be 1-6, got " + std::to_string(number));
    }
    return kQueries[static_cast<std::size_t>(number - 1)];
}

}  // namespace ottdb

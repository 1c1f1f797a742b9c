// Generated by gen_ml_oracle.py: E_a(z) from the power series summed in
// extended precision (up to ~1000 digits for a = 0.3, z = -10).
// (alpha, z, value)
pub const ML_SERIES_ORACLE: &[(f64, f64, f64)] = &[
    (0.3, 0.0, 1.0),
    (0.3, -0.5, 0.63264900594359902138),
    (0.3, -1.0, 0.45659440832969066901),
    (0.3, -1.5, 0.35538165657360314498),
    (0.3, -2.0, 0.29023222616787535326),
    (0.3, -2.5, 0.24498312379478694282),
    (0.3, -3.0, 0.21180263319643578039),
    (0.3, -3.5, 0.18646550952401197816),
    (0.3, -4.0, 0.16650174431551664824),
    (0.3, -4.5, 0.15037490568877673457),
    (0.3, -5.0, 0.13708086902027063758),
    (0.3, -5.5, 0.12593646563646755199),
    (0.3, -6.0, 0.11646113163059886741),
    (0.3, -6.5, 0.10830719292094380759),
    (0.3, -7.0, 0.10121701506650601784),
    (0.3, -7.5, 0.094995693498016270041),
    (0.3, -8.0, 0.089493095818620723168),
    (0.3, -8.5, 0.084591727953855240828),
    (0.3, -9.0, 0.0801983370838739316),
    (0.3, -9.5, 0.076237976254660876966),
    (0.3, -10.0, 0.072649729072772085356),
    (0.5, 0.0, 1.0),
    (0.5, -0.5, 0.61569034419292587487),
    (0.5, -1.0, 0.42758357615580700441),
    (0.5, -1.5, 0.32158541645431750235),
    (0.5, -2.0, 0.25539567631050574387),
    (0.5, -2.5, 0.21080636406114358065),
    (0.5, -3.0, 0.17900115118138995042),
    (0.5, -3.5, 0.1552936556088942974),
    (0.5, -4.0, 0.13699945762506138989),
    (0.5, -4.5, 0.12248480427384141755),
    (0.5, -5.0, 0.11070463773306862637),
    (0.5, -5.5, 0.10096221839949908823),
    (0.5, -6.0, 0.092776567800538354389),
    (0.5, -6.5, 0.085805670104894601778),
    (0.5, -7.0, 0.07980005432915293349),
    (0.5, -7.5, 0.074573693062876683005),
    (0.5, -8.0, 0.069985166200880927723),
    (0.5, -8.5, 0.065925122499980351741),
    (0.5, -9.0, 0.062307724037774684147),
    (0.5, -9.5, 0.059064678352563890854),
    (0.5, -10.0, 0.056140992743822585858),
    (0.7, 0.0, 1.0),
    (0.7, -0.5, 0.60514759205956427126),
    (0.7, -1.0, 0.39961197811559938437),
    (0.7, -1.5, 0.28384096962173715781),
    (0.7, -2.0, 0.21378672701529726519),
    (0.7, -2.5, 0.16863128667619574102),
    (0.7, -3.0, 0.13789710966502707183),
    (0.7, -3.5, 0.11599093758675771783),
    (0.7, -4.0, 0.099760254890514619339),
    (0.7, -4.5, 0.087338271657445577451),
    (0.7, -5.0, 0.077569357764769801692),
    (0.7, -5.5, 0.06970921841805327433),
    (0.7, -6.0, 0.06326133486068879796),
    (0.7, -6.5, 0.057884016341155030974),
    (0.7, -7.0, 0.053335564803365703448),
    (0.7, -7.5, 0.049440801830311776805),
    (0.7, -8.0, 0.046069992385362379886),
    (0.7, -8.5, 0.04312519563404963758),
    (0.7, -9.0, 0.040531197267350677943),
    (0.7, -9.5, 0.038229344495940002608),
    (0.7, -10.0, 0.036173265542309153332),
    (1.3, 0.0, 1.0),
    (1.3, -0.5, 0.63300793500239903356),
    (1.3, -1.0, 0.36894184906938253399),
    (1.3, -1.5, 0.18258094534932854431),
    (1.3, -2.0, 0.05434750482462138123),
    (1.3, -2.5, -0.030871912177858866748),
    (1.3, -3.0, -0.084672263992043999422),
    (1.3, -3.5, -0.11588679720205955734),
    (1.3, -4.0, -0.13119078532708238191),
    (1.3, -4.5, -0.13558165611806032083),
    (1.3, -5.0, -0.13275950847306689644),
    (1.3, -5.5, -0.12542756300796214499),
    (1.3, -6.0, -0.11552842977761824676),
    (1.3, -6.5, -0.10442907494831134966),
    (1.3, -7.0, -0.093064910851954245382),
    (1.3, -7.5, -0.082051425584543871937),
    (1.3, -8.0, -0.07177013005767399837),
    (1.3, -8.5, -0.062434266565249855876),
    (1.3, -9.0, -0.054138639127601393077),
    (1.3, -9.5, -0.046897047138568554676),
    (1.3, -10.0, -0.040670092992621632382),
    (1.7, 0.0, 1.0),
    (1.7, -0.5, 0.70011466051297225591),
    (1.7, -1.0, 0.44454443263222341465),
    (1.7, -1.5, 0.22865278892660154761),
    (1.7, -2.0, 0.048188540521817143666),
    (1.7, -2.5, -0.10074110179238679011),
    (1.7, -3.0, -0.22169582683909763943),
    (1.7, -3.5, -0.31792597161514876947),
    (1.7, -4.0, -0.3923948036710326877),
    (1.7, -4.5, -0.44779941767618424855),
    (1.7, -5.0, -0.48659032255574784245),
    (1.7, -5.5, -0.51098979178512777219),
    (1.7, -6.0, -0.52300904580168661873),
    (1.7, -6.5, -0.52446433203163435474),
    (1.7, -7.0, -0.51699196472745793451),
    (1.7, -7.5, -0.50206238366046791504),
    (1.7, -8.0, -0.48099328770774028104),
    (1.7, -8.5, -0.45496189650671734373),
    (1.7, -9.0, -0.425016390618055598),
    (1.7, -9.5, -0.39208657803226086794),
    (1.7, -10.0, -0.35699383237274917573),
];
"""Frozen oracle values generated by make_oracle_tables.py. Do not edit."""
STRONG_QTE = {('0', 'A', 0.1): -1.8721280189707032,
 ('0', 'A', 0.2): -2.0039155114750273,
 ('0', 'A', 0.3): -2.145899246607399,
 ('0', 'A', 0.4): -2.3035671291264563,
 ('0', 'A', 0.5): -2.4816890703380645,
 ('0', 'A', 0.6): -2.6863907129579037,
 ('0', 'A', 0.7): -2.927112212390823,
 ('0', 'A', 0.8): -3.221000589695029,
 ('0', 'A', 0.9): -3.6086437759586185,
 ('0', 'B', 0.1): -0.2810888235592388,
 ('0', 'B', 0.2): -0.25032483712245157,
 ('0', 'B', 0.3): -0.28515929434866005,
 ('0', 'B', 0.4): -0.36972674732123845,
 ('0', 'B', 0.5): -0.5000000000000004,
 ('0', 'B', 0.6): -0.677695686396266,
 ('0', 'B', 0.7): -0.9101430581739591,
 ('0', 'B', 0.8): -1.214278360320587,
 ('0', 'B', 0.9): -1.63372928385408,
 ('A', '0', 0.1): 1.8721280189707032,
 ('A', '0', 0.2): 2.0039155114750273,
 ('A', '0', 0.3): 2.145899246607399,
 ('A', '0', 0.4): 2.3035671291264563,
 ('A', '0', 0.5): 2.4816890703380645,
 ('A', '0', 0.6): 2.6863907129579037,
 ('A', '0', 0.7): 2.927112212390823,
 ('A', '0', 0.8): 3.221000589695029,
 ('A', '0', 0.9): 3.6086437759586185,
 ('A', 'B', 0.1): 1.5910391954114644,
 ('A', 'B', 0.2): 1.7535906743525758,
 ('A', 'B', 0.3): 1.860739952258739,
 ('A', 'B', 0.4): 1.9338403818052177,
 ('A', 'B', 0.5): 1.981689070338064,
 ('A', 'B', 0.6): 2.0086950265616377,
 ('A', 'B', 0.7): 2.0169691542168637,
 ('A', 'B', 0.8): 2.006722229374442,
 ('A', 'B', 0.9): 1.9749144921045385,
 ('B', '0', 0.1): 0.2810888235592388,
 ('B', '0', 0.2): 0.25032483712245157,
 ('B', '0', 0.3): 0.28515929434866005,
 ('B', '0', 0.4): 0.36972674732123845,
 ('B', '0', 0.5): 0.5000000000000004,
 ('B', '0', 0.6): 0.677695686396266,
 ('B', '0', 0.7): 0.9101430581739591,
 ('B', '0', 0.8): 1.214278360320587,
 ('B', '0', 0.9): 1.63372928385408,
 ('B', 'A', 0.1): -1.5910391954114644,
 ('B', 'A', 0.2): -1.7535906743525758,
 ('B', 'A', 0.3): -1.860739952258739,
 ('B', 'A', 0.4): -1.9338403818052177,
 ('B', 'A', 0.5): -1.981689070338064,
 ('B', 'A', 0.6): -2.0086950265616377,
 ('B', 'A', 0.7): -2.0169691542168637,
 ('B', 'A', 0.8): -2.006722229374442,
 ('B', 'A', 0.9): -1.9749144921045385}
STRONG_ATE = {('0', 'A'): -2.6191402509610517,
 ('0', 'B'): -0.7428571428571407,
 ('A', '0'): 2.6191402509610517,
 ('A', 'B'): 1.876283108103911,
 ('B', '0'): 0.7428571428571407,
 ('B', 'A'): -1.876283108103911}
STRONG_IQR = {'0': 0.7905858649699402, 'A': 1.7831367687868878, 'B': 1.5811717299398709}
STRONG_ATT = {('0', 'A', '0'): -2.6232083590912287,
 ('0', 'A', 'A'): -2.8006179921257512,
 ('0', 'A', 'B'): -2.4322383656227826,
 ('0', 'B', '0'): -0.7499999999999984,
 ('0', 'B', 'A'): -0.8809523809523783,
 ('0', 'B', 'B'): -0.5952380952380936,
 ('A', '0', '0'): 2.6232083590912287,
 ('A', '0', 'A'): 2.8006179921257512,
 ('A', '0', 'B'): 2.4322383656227826,
 ('A', 'B', '0'): 1.87320835909123,
 ('A', 'B', 'A'): 1.919665611173373,
 ('A', 'B', 'B'): 1.837000270384689,
 ('B', '0', '0'): 0.7499999999999984,
 ('B', '0', 'A'): 0.8809523809523783,
 ('B', '0', 'B'): 0.5952380952380936,
 ('B', 'A', '0'): -1.87320835909123,
 ('B', 'A', 'A'): -1.919665611173373,
 ('B', 'A', 'B'): -1.837000270384689}
WEAK_ATT = {'A': 0.6607788188852899, 'B': 1.0396664137575793}
WEAK_QTT = {('A', 0.1): 0.9698334116913547,
 ('A', 0.2): 0.9853435766193606,
 ('A', 0.3): 0.9587304831059629,
 ('A', 0.4): 0.9013948226005928,
 ('A', 0.5): 0.8157369924296272,
 ('A', 0.6): 0.7001943893244218,
 ('A', 0.7): 0.5495034058909103,
 ('A', 0.8): 0.35217543829614417,
 ('A', 0.9): 0.07968344865053378,
 ('B', 0.1): 1.0479809800069837,
 ('B', 0.2): 1.0701464084856276,
 ('B', 0.3): 1.0848357291915431,
 ('B', 0.4): 1.0930542992195829,
 ('B', 0.5): 1.0941695923055965,
 ('B', 0.6): 1.0863125088790766,
 ('B', 0.7): 1.0657328298996407,
 ('B', 0.8): 1.0245049952234129,
 ('B', 0.9): 0.9410954805615863}

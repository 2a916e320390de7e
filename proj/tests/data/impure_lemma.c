int counter;

/*@ ghost
  @ /@ lemma
  @  @ requires \true;
  @  @ ensures \true;
  @  @/
  @ void bump(void)
  @ {
  @   counter = 1;
  @ }
  @*/

/*@ ghost int ghost_counter; */

/*@ ghost
  @ /@ lemma
  @  @ assigns ghost_counter;
  @  @ ensures \true;
  @  @/
  @ void bump(void)
  @ {
  @   ghost_counter = 1;
  @ }
  @*/
